#include "ssn/cli.hpp"

int main(int argc, char** argv) { return ssn::run_cli(argc, argv); }
