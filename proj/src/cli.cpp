#include "ssn/cli.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ssn/error.hpp"
#include "ssn/io.hpp"
#include "ssn/parallel.hpp"
#include "ssn/rng.hpp"
#include "ssn/scenery.hpp"
#include "ssn/stats.hpp"

namespace ssn {

namespace {

struct OptSpec {
  std::string name;
  json def;
  std::string help;
};

const std::map<std::string, std::vector<OptSpec>>& command_table() {
  static const std::map<std::string, std::vector<OptSpec>> table{
      {"pisot", {{"value", "x^2 - x - 1", "integer, exact constant or polynomial in x"}}},
      {"model",
       {{"ifs", "", "IFS JSON file"},
        {"beta", "", "base to compare each |r_i| against"},
        {"max_m", 8, "largest iterate searched for a separated pair"}}},
      {"sample",
       {{"ifs", "", "IFS JSON file"},
        {"model", "", "model JSON file"},
        {"kind", "mu", "mu, eta or disintegration"},
        {"n", 1000, "number of points"},
        {"depth", 0, "digits per point (0: automatic)"}}},
      {"expand",
       {{"beta", "2", "base"},
        {"x", "1/3", "exact point"},
        {"n", 32, "number of digits"},
        {"pushforward", "identity", "map applied before expanding"}}},
      {"parry", {{"beta", "golden", "base"}, {"grid", 1024, "rows in the density table"}}},
      {"normality",
       {{"ifs", "", "IFS JSON file"},
        {"model", "", "model JSON file"},
        {"beta", "2", "base"},
        {"points", 100, "sample points"},
        {"digits", 2000, "orbit length"},
        {"pushforward", "identity", "smooth map applied to the points"},
        {"max_mean_discrepancy", nullptr, "optional check on the mean discrepancy"}}},
      {"scenery",
       {{"ifs", "", "IFS JSON file"},
        {"model", "", "model JSON file"},
        {"T_roofs", 200.0, "orbit length in units of E[roof]"},
        {"dt_roofs", 0.25, "sampling step in units of E[roof]"},
        {"samples", 512, "points per window"},
        {"q_samples", 4000, "windows drawn from Q"},
        {"half_bins", kDefaultHalfBins, "B; windows have 2B bins"},
        {"margin", "1/2", "gap margin for rescaling"},
        {"conditioning", "rescale", "rescale or t0"},
        {"distance_tol", 0.05, "check: max functional distance"},
        {"contrast_min", 0.2, "check: distance from the point-mass distribution"},
        {"export_windows", 0, "orbit windows written to windows.csv"}}},
      {"disintegration",
       {{"ifs", "", "IFS JSON file"},
        {"n", 100000, "points per sampler"},
        {"depth", 0, "digits per point (0: automatic)"},
        {"ks_tol", 0.01, "check: KS distance"}}},
      {"spectrum",
       {{"ifs", "", "IFS JSON file"},
        {"model", "", "model JSON file"},
        {"beta", "2", "Pisot base"},
        {"search_bound", 64, "exponent bound for the relation search"}}},
  };
  return table;
}

json convert(const std::string& text, const json& def) {
  try {
    if (def.is_boolean()) return text == "1" || text == "true" || text == "yes";
    if (def.is_number_integer()) return std::stoll(text);
    if (def.is_number_float()) return std::stod(text);
    if (def.is_null()) return std::stod(text);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad value '" + text + "'");
  }
  return text;
}

struct Check {
  std::string name;
  double value;
  double tolerance;
  std::string relation;  // "<" or ">"
  std::uint64_t seed;
  bool pass() const { return relation == "<" ? value < tolerance : value > tolerance; }
};

json checks_json(const std::vector<Check>& checks) {
  json a = json::array();
  for (const auto& c : checks)
    a.push_back({{"name", c.name},
                 {"value", c.value},
                 {"tolerance", c.tolerance},
                 {"relation", c.relation},
                 {"seed", c.seed},
                 {"pass", c.pass()}});
  return a;
}

int ifloor_depth(double max_ratio, double diam) {
  int d = 1;
  while (std::pow(max_ratio, d) * diam >= 1e-12) ++d;
  return d;
}

class Runner {
 public:
  Runner(json cfg, std::string out_dir, std::ostream& out) : cfg_(std::move(cfg)), dir_(std::move(out_dir)), out_(out) {}

  int run() {
    const std::string cmd = cfg_.at("command");
    seed_ = cfg_.at("seed").get<std::uint64_t>();
    threads_ = cfg_.at("threads").get<int>();
    json results;
    if (cmd == "pisot") results = pisot();
    else if (cmd == "model") results = model();
    else if (cmd == "sample") results = sample();
    else if (cmd == "expand") results = expand();
    else if (cmd == "parry") results = parry();
    else if (cmd == "normality") results = normality();
    else if (cmd == "scenery") results = scenery();
    else if (cmd == "disintegration") results = disintegration();
    else if (cmd == "spectrum") results = spectrum();
    else throw Error(ErrorKind::Precondition, "unknown command " + cmd);

    json report;
    report["command"] = cmd;
    report["config"] = cfg_;
    report["results"] = results;
    report["checks"] = checks_json(checks_);
    report["versions"] = {{"ssnormal", kVersion}, {"panel", kPanelVersion}};
    write("config.json", cfg_.dump(2) + "\n");
    write(cmd + "_report.json", report.dump(2) + "\n");
    bool ok = true;
    for (const auto& c : checks_) {
      out_ << (c.pass() ? "PASS " : "FAIL ") << c.name << " = " << c.value << " (" << c.relation << " " << c.tolerance
           << ")\n";
      ok = ok && c.pass();
    }
    out_ << cmd << ": wrote " << (std::filesystem::path(dir_) / (cmd + "_report.json")).string() << "\n";
    return ok ? 0 : 2;
  }

 private:
  json cfg_;
  std::string dir_;
  std::ostream& out_;
  std::uint64_t seed_ = 1;
  int threads_ = 1;
  std::vector<Check> checks_;

  void write(const std::string& name, const std::string& text) {
    write_text_file((std::filesystem::path(dir_) / name).string(), text);
  }

  std::uint64_t sub_seed(const char* label) const { return derive_seed(seed_, label); }

  bool has(const char* key) const {
    return cfg_.contains(key) && !(cfg_[key].is_string() && cfg_[key].get<std::string>().empty()) &&
           !cfg_[key].is_null();
  }

  Model load_model() {
    if (has("model")) return model_from_json(cfg_["model"]);
    if (has("ifs")) return build_model(ifs_from_json(cfg_["ifs"]), cfg_.value("max_m", 8));
    throw Error(ErrorKind::Precondition, "an ifs or model is required");
  }

  json pisot() {
    const std::string v = cfg_["value"];
    AlgebraicNumber a = v.find('x') != std::string::npos
                            ? AlgebraicNumber::largest_real_root(primitive_part(parse_polynomial(v)))
                            : parse_exact(v).to_algebraic();
    const PisotReport r = pisot_report(a);
    json j;
    j["minimal_polynomial"] = to_string(a.min_poly());
    j["value"] = a.enclosure(64).mid();
    j["pisot"] = r.pisot;
    j["reason"] = r.reason;
    j["conjugate_moduli"] = json::array();
    for (const auto& m : r.conjugate_moduli) j["conjugate_moduli"].push_back(m.mid());
    j["precision_used"] = r.precision_used;
    out_ << v << ": " << (r.pisot ? "Pisot" : "not Pisot") << " (" << r.reason << ")\n";
    return j;
  }

  json model() {
    const SimilarityIFS ifs = ifs_from_json(cfg_["ifs"]);
    const Model m = build_model(ifs, cfg_["max_m"].get<int>());
    json j;
    j["m"] = m.m;
    j["pair"] = {word_string(m.pair_i), word_string(m.pair_j)};
    j["indices"] = m.size();
    const SscResult ssc = verify_ssc(m);
    j["ssc"] = ssc.to_string();
    if (ssc.min_gap) {
      j["min_gap"] = ssc.min_gap->to_string();
      j["min_gap_value"] = ssc.min_gap->to_double();
    }
    // every word of the iterate keeps its weight as q_i p_u
    const SimilarityIFS it = m.m > 1 ? iterate_ifs(ifs, m.m) : ifs;
    std::map<std::string, mpq_class> want;
    for (std::size_t k = 0; k < it.size(); ++k)
      want[it.maps()[k].s.key() + "|" + it.maps()[k].t.key()] += it.weights()[k];
    std::map<std::string, mpq_class> got;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t u = 0; u < m.index(i).size(); ++u)
        got[m.index(i).r.key() + "|" + m.index(i).t[u].key()] += m.q()[i] * m.index(i).p[u];
    j["weights_preserved"] = want == got;
    j["ratios"] = json::array();
    std::optional<BetaBase> beta;
    if (has("beta")) beta = beta_from_json(cfg_["beta"]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      json e{{"index", i}, {"label", m.index(i).label}, {"r", m.index(i).r.to_string()},
             {"q", m.q()[i].get_str()}, {"maps", m.index(i).size()}};
      if (beta) {
        FieldElement r = m.index(i).r;
        if (r.sign() < 0) r = -r;
        e["relation_vs_beta"] = to_string(multiplicative_relation(r, beta->value()));
      }
      j["ratios"].push_back(e);
    }
    write("model.json", model_to_json(m).dump(2) + "\n");
    out_ << "model: " << m.size() << " indices, M = " << m.m << ", " << ssc.to_string() << "\n";
    return j;
  }

  json sample() {
    const std::string kind = cfg_["kind"];
    const std::size_t n = cfg_["n"].get<std::size_t>();
    int depth = cfg_["depth"].get<int>();
    std::vector<double> pts;
    double err = 0;
    if (kind == "mu") {
      if (!has("ifs")) throw Error(ErrorKind::Precondition, "sampling mu needs an ifs");
      const SimilarityIFS ifs = ifs_from_json(cfg_["ifs"]);
      if (depth == 0) depth = ifloor_depth(ifs.max_abs_ratio(), 1.0 + attractor_hull(ifs).length().to_double());
      auto s = sample_measure(ifs, n, depth, sub_seed("mu"));
      pts = std::move(s.points);
      err = s.error_bound;
    } else {
      const Model m = load_model();
      if (depth == 0) depth = m.default_depth();
      if (kind == "eta") {
        pts = sample_eta_values(m, Omega(m, sub_seed("omega")), n, depth, sub_seed("eta"));
      } else if (kind == "disintegration") {
        pts = sample_disintegration(m, n, depth, sub_seed("disintegration"));
      } else {
        throw Error(ErrorKind::Precondition, "kind must be mu, eta or disintegration");
      }
      err = std::pow(m.max_abs_ratio(), depth) * m.diam();
    }
    std::ostringstream csv;
    csv.precision(17);
    csv << "index,value\n";
    for (std::size_t k = 0; k < pts.size(); ++k) csv << k << "," << pts[k] << "\n";
    write("samples.csv", csv.str());
    return {{"count", pts.size()}, {"depth", depth}, {"error_bound", err}, {"mean", mean(pts)}};
  }

  json expand() {
    const BetaBase b = beta_from_json(cfg_["beta"]);
    const Pushforward g = Pushforward::parse(cfg_["pushforward"]);
    const RealPoint x = RealPoint::of(parse_exact(cfg_["x"]));
    const RealPoint gx = g.apply(x);
    const auto enc = gx.enclosure(64);
    const bool reduced = enc.lower_q() < 0 || enc.upper_q() >= 1;
    const OrbitRecord r = beta_orbit(b, reduce_mod1(gx), cfg_["n"].get<std::size_t>());
    std::string digits;
    for (int d : r.digits) digits += (d < 10 ? std::to_string(d) : "[" + std::to_string(d) + "]");
    out_ << digits << "\n";
    return {{"digits", digits},
            {"reduced_mod1", reduced},
            {"exact", r.exact},
            {"precision_used", r.exact ? json("exact") : json(r.precision_used)},
            {"restarts", r.restarts},
            {"orbit_tail", r.orbit.back()}};
  }

  json parry() {
    const BetaBase b = beta_from_json(cfg_["beta"]);
    const ParryDensity p = parry_density(b);
    json j;
    j["orbit_kind"] = p.orbit_kind;
    j["exact"] = p.exact;
    j["breakpoints"] = p.breakpoints;
    j["values"] = p.values;
    j["tail_bound"] = p.tail_bound;
    j["pisot"] = b.pisot();
    if (p.exact) {
      j["values_exact"] = json::array();
      for (const auto& v : p.values_exact) j["values_exact"].push_back(v.to_string());
      j["breakpoints_exact"] = json::array();
      for (const auto& v : p.breakpoints_exact) j["breakpoints_exact"].push_back(v.to_string());
    }
    const int grid = cfg_["grid"].get<int>();
    std::ostringstream csv;
    csv.precision(17);
    csv << "x,density,cdf\n";
    for (int k = 0; k < grid; ++k) {
      const double x = (k + 0.5) / grid;
      csv << x << "," << p.density(x) << "," << p.cdf(x) << "\n";
    }
    write("parry.csv", csv.str());
    return j;
  }

  json normality() {
    const Model m = load_model();
    const BetaBase b = beta_from_json(cfg_["beta"]);
    const Pushforward g = Pushforward::parse(cfg_["pushforward"]);
    g.check_on(m.hull());
    const ParryDensity parry = parry_density(b);
    const std::size_t points = cfg_["points"].get<std::size_t>();
    const std::size_t n = cfg_["digits"].get<std::size_t>();
    const int depth = exact_depth_for_digits(b.to_double(), n, m.max_abs_ratio(), std::max(m.diam(), 1e-300));
    const auto xs = sample_disintegration_exact(m, points, depth, sub_seed("points"));
    const std::vector<std::size_t> lengths{std::max<std::size_t>(1, n / 8), std::max<std::size_t>(1, n / 4),
                                           std::max<std::size_t>(1, n / 2), n};
    std::vector<std::vector<NormalityStat>> stats(points);
    std::vector<int> reduced(points, 0);
    parallel_for(points, static_cast<unsigned>(threads_), [&](std::size_t i) {
      const RealPoint y = g.apply(RealPoint::of(xs[i]));
      const auto e = y.enclosure(64);
      reduced[i] = e.lower_q() < 0 || e.upper_q() >= 1;
      const OrbitRecord orbit = beta_orbit(b, reduce_mod1(y), n);
      for (std::size_t len : lengths) stats[i].push_back(normality_statistic(orbit, b, parry, len));
    });
    const int alphabet = b.alphabet_size();
    std::ostringstream csv;
    csv.precision(17);
    csv << "point_id,beta,n";
    for (int d = 0; d < alphabet; ++d) csv << ",digit_" << d << "_freq";
    csv << ",discrepancy,precision_used\n";
    std::vector<double> mean_freq(static_cast<std::size_t>(alphabet), 0.0);
    std::vector<std::vector<double>> disc(lengths.size());
    for (std::size_t i = 0; i < points; ++i) {
      const NormalityStat& s = stats[i].back();
      csv << i << "," << b.spec() << "," << n;
      for (int d = 0; d < alphabet; ++d) {
        const double f = static_cast<std::size_t>(d) < s.digit_freqs.size() ? s.digit_freqs[static_cast<std::size_t>(d)] : 0.0;
        csv << "," << f;
        mean_freq[static_cast<std::size_t>(d)] += f / static_cast<double>(points);
      }
      csv << "," << s.discrepancy << "," << (s.exact ? std::string("exact") : std::to_string(s.precision_used)) << "\n";
      for (std::size_t l = 0; l < lengths.size(); ++l) disc[l].push_back(stats[i][l].discrepancy);
    }
    write("normality.csv", csv.str());
    json j;
    j["points"] = points;
    j["digits"] = n;
    j["sample_depth"] = depth;
    j["mean_digit_freqs"] = mean_freq;
    j["reduced_mod1"] = std::count(reduced.begin(), reduced.end(), 1);
    j["discrepancy_by_length"] = json::array();
    for (std::size_t l = 0; l < lengths.size(); ++l)
      j["discrepancy_by_length"].push_back(
          {{"length", lengths[l]}, {"mean", mean(disc[l])}, {"standard_error", standard_error(disc[l])}});
    j["mean_discrepancy"] = mean(disc.back());
    if (has("max_mean_discrepancy")) {
      checks_.push_back({"mean_discrepancy", mean(disc.back()), cfg_["max_mean_discrepancy"].get<double>(), "<",
                         sub_seed("points")});
    }
    out_ << "mean discrepancy " << mean(disc.back()) << "\n";
    return j;
  }

  json scenery() {
    const Model base = load_model();
    const FieldElement margin(parse_exact(cfg_["margin"].get<std::string>()));
    const auto rescale = rescale_model_for_gap(base, *margin.as_rational());
    WindowOptions opt;
    opt.samples = cfg_["samples"].get<std::size_t>();
    opt.half_bins = cfg_["half_bins"].get<int>();
    const std::string cond = cfg_["conditioning"];
    const bool t0 = cond == "t0";
    if (!t0 && cond != "rescale") throw Error(ErrorKind::Precondition, "conditioning must be rescale or t0");
    const Model& m = t0 ? base : rescale.model;
    if (t0) opt.half_width = 1.0 / rescale.factor.to_double();
    const ExtendedChain chain = build_extended_chain(m);
    const double T = cfg_["T_roofs"].get<double>() * chain.expected_roof;
    const double dt = cfg_["dt_roofs"].get<double>() * chain.expected_roof;
    const SceneState start = SceneState::random(m, sub_seed("start"), chain.with_orientation);
    const auto orbit = scenery_orbit(m, start, T, dt, opt, sub_seed("orbit"), threads_);
    const auto q = sample_Q(m, chain, cfg_["q_samples"].get<std::size_t>(), opt, sub_seed("q"), threads_);
    const auto rep = compare_scenery_to_Q(orbit.windows, q);
    const auto trivial = compare_scenery_to_Q(orbit.windows, {point_mass_window(opt.half_bins)});
    json j;
    j["panel_version"] = rep.panel_version;
    j["rescale_factor"] = rescale.factor.to_string();
    j["conditioning"] = cond;
    j["expected_roof"] = chain.expected_roof;
    j["T"] = T;
    j["windows"] = orbit.windows.size();
    j["base_steps"] = orbit.shifts;
    j["chain"] = {{"states", chain.size()},
                  {"with_orientation", chain.with_orientation},
                  {"diameter", chain.diameter},
                  {"stationary_exact", chain.stationary_exact()}};
    j["functionals"] = json::array();
    for (int k = 0; k < kPanelSize; ++k)
      j["functionals"].push_back({{"name", panel_names()[static_cast<std::size_t>(k)]},
                                  {"orbit", rep.orbit_average[static_cast<std::size_t>(k)]},
                                  {"q", rep.q_average[static_cast<std::size_t>(k)]},
                                  {"distance", rep.distance[static_cast<std::size_t>(k)]}});
    j["max_distance"] = rep.max_distance;
    j["max_distance_functional"] = panel_names()[rep.argmax];
    j["trivial_contrast"] = trivial.max_distance;
    checks_.push_back({"max_functional_distance", rep.max_distance, cfg_["distance_tol"].get<double>(), "<",
                       sub_seed("orbit")});
    checks_.push_back({"trivial_contrast", trivial.max_distance, cfg_["contrast_min"].get<double>(), ">",
                       sub_seed("orbit")});
    const int exported = std::min<int>(cfg_["export_windows"].get<int>(), static_cast<int>(orbit.windows.size()));
    if (exported > 0) {
      std::ostringstream csv;
      csv.precision(17);
      csv << "bin_lo,bin_hi";
      for (int w = 0; w < exported; ++w) csv << ",t=" << orbit.times[static_cast<std::size_t>(w)];
      csv << "\n";
      const auto& first = orbit.windows.front();
      for (std::size_t k = 0; k < first.size(); ++k) {
        csv << first.edge(k) << "," << first.edge(k + 1);
        for (int w = 0; w < exported; ++w) csv << "," << orbit.windows[static_cast<std::size_t>(w)].bins[k];
        csv << "\n";
      }
      write("windows.csv", csv.str());
    }
    return j;
  }

  json disintegration() {
    const SimilarityIFS ifs = ifs_from_json(cfg_["ifs"]);
    const Model m = build_model(ifs);
    const std::size_t n = cfg_["n"].get<std::size_t>();
    int depth = cfg_["depth"].get<int>();
    if (depth == 0) depth = ifloor_depth(ifs.max_abs_ratio(), 1.0 + attractor_hull(ifs).length().to_double());
    const auto direct = sample_measure(ifs, n, depth, sub_seed("mu"));
    const int mdepth = std::max(1, depth / std::max(1, m.m));
    const auto dis = sample_disintegration(m, n, mdepth, sub_seed("disintegration"));
    const double ks = ks_distance(direct.points, dis);
    checks_.push_back({"ks_direct_vs_disintegration", ks, cfg_["ks_tol"].get<double>(), "<", seed_});
    return {{"n", n}, {"depth", depth}, {"model_depth", mdepth}, {"model_indices", m.size()}, {"M", m.m}, {"ks", ks}};
  }

  json spectrum() {
    const Model m = load_model();
    const BetaBase b = beta_from_json(cfg_["beta"]);
    const SpectrumVerdict v = spectrum_obstruction(m, b, cfg_["search_bound"].get<int>());
    out_ << v.to_string() << "\n";
    json j{{"verdict", v.normality_implied ? "NormalityImplied" : "Inconclusive"}, {"evidence", v.evidence}};
    if (v.normality_implied) {
      j["index"] = v.j;
      j["ratio"] = v.ratio.to_string();
      j["relation"] = to_string(v.relation);
      j["certified"] = v.relation.certified();
    }
    return j;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Pointwise normality of self-similar measures"};
  app.set_version_flag("--version", kVersion);
  std::string seed_s, threads_s, config_path, out_dir;
  app.add_option("--seed", seed_s, "master seed (default 1)");
  app.add_option("--threads", threads_s, "worker threads (default 1)");
  app.add_option("--config", config_path, "JSON config; flags override it");
  app.add_option("--out-dir", out_dir, "output directory (default .)");
  app.require_subcommand(0, 1);
  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [cmd, specs] : command_table()) {
    CLI::App* sub = app.add_subcommand(cmd, "");
    sub->fallthrough();
    for (const auto& s : specs) {
      std::string flag = "--" + s.name;
      std::replace(flag.begin(), flag.end(), '_', '-');
      if (cmd == "pisot" && s.name == "value") flag = s.name;
      sub->add_option(flag, raw[cmd][s.name], s.help);
    }
    subs[cmd] = sub;
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    json file = json::object();
    if (!config_path.empty()) file = load_json_file(config_path);
    std::string cmd;
    for (const auto& [name, sub] : subs)
      if (sub->parsed()) cmd = name;
    if (cmd.empty()) cmd = file.value("command", std::string());
    if (cmd.empty() || !command_table().count(cmd)) {
      err << "error: a subcommand is required\n" << app.help();
      return 1;
    }
    json cfg;
    cfg["command"] = cmd;
    cfg["seed"] = 1;
    cfg["threads"] = 1;
    cfg["out_dir"] = ".";
    for (const auto& s : command_table().at(cmd)) cfg[s.name] = s.def;
    for (const auto& [k, v] : file.items()) {
      if (!cfg.contains(k)) throw Error(ErrorKind::Parse, "unknown config key '" + k + "' for " + cmd);
      cfg[k] = v;
    }
    if (!seed_s.empty()) cfg["seed"] = std::stoull(seed_s);
    if (!threads_s.empty()) cfg["threads"] = std::stoi(threads_s);
    if (!out_dir.empty()) cfg["out_dir"] = out_dir;
    for (const auto& s : command_table().at(cmd)) {
      const std::string& v = raw[cmd][s.name];
      if (subs[cmd]->count(s.name == "value" && cmd == "pisot" ? s.name : "--" + [&] {
            std::string f = s.name;
            std::replace(f.begin(), f.end(), '_', '-');
            return f;
          }()))
        cfg[s.name] = convert(v, s.def);
    }
    // inline referenced files so the echoed config is self-contained
    for (const char* key : {"ifs", "model"}) {
      if (cfg.contains(key) && cfg[key].is_string() && !cfg[key].get<std::string>().empty()) {
        cfg[key] = load_json_file(cfg[key].get<std::string>());
      }
    }
    const std::string dir = cfg["out_dir"];
    cfg.erase("out_dir");
    std::filesystem::create_directories(dir);
    Runner runner(cfg, dir, out);
    const int code = runner.run();
    err << "wall-clock " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace ssn
