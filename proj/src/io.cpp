#include "ssn/io.hpp"

#include <fstream>
#include <sstream>

#include "ssn/error.hpp"

namespace ssn {

namespace {
mpq_class parse_weight(const json& v) {
  if (v.is_number_integer()) return mpq_class(v.get<long>());
  if (!v.is_string()) throw Error(ErrorKind::Parse, "weights must be strings such as \"1/2\"");
  const FieldElement x = parse_exact(v.get<std::string>());
  const auto q = x.as_rational();
  if (!q) throw Error(ErrorKind::Parse, "weight " + v.get<std::string>() + " is not rational");
  return *q;
}

FieldElement parse_value(const json& v) {
  if (v.is_number_integer()) return FieldElement(mpq_class(v.get<long>()));
  if (!v.is_string()) throw Error(ErrorKind::Parse, "expected an exact string, got " + v.dump());
  return parse_exact(v.get<std::string>());
}

std::string exact_string(const FieldElement& x) { return x.to_string(); }
std::string exact_string(const mpq_class& q) { return q.get_str(); }
}  // namespace

SimilarityIFS ifs_from_json(const json& j) {
  if (!j.is_object() || !j.contains("maps")) throw Error(ErrorKind::Parse, "IFS JSON needs a \"maps\" array");
  std::vector<SimilarityMap> maps;
  for (const auto& m : j.at("maps")) {
    if (!m.contains("s") || !m.contains("t")) throw Error(ErrorKind::Parse, "each map needs \"s\" and \"t\"");
    maps.emplace_back(parse_value(m.at("s")), parse_value(m.at("t")));
  }
  std::vector<mpq_class> w;
  if (j.contains("weights")) {
    for (const auto& v : j.at("weights")) w.push_back(parse_weight(v));
  } else {
    w.assign(maps.size(), mpq_class(1, static_cast<long>(std::max<std::size_t>(maps.size(), 1))));
  }
  return SimilarityIFS(std::move(maps), std::move(w));
}

json ifs_to_json(const SimilarityIFS& ifs) {
  json j;
  j["maps"] = json::array();
  for (const auto& m : ifs.maps()) j["maps"].push_back({{"s", exact_string(m.s)}, {"t", exact_string(m.t)}});
  j["weights"] = json::array();
  for (const auto& w : ifs.weights()) j["weights"].push_back(exact_string(w));
  return j;
}

json model_to_json(const Model& m) {
  json j;
  j["m"] = m.m;
  j["pair_i"] = m.pair_i;
  j["pair_j"] = m.pair_j;
  j["indices"] = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const IndexIFS& f = m.index(i);
    json e;
    e["label"] = f.label;
    e["r"] = exact_string(f.r);
    e["t"] = json::array();
    for (const auto& t : f.t) e["t"].push_back(exact_string(t));
    e["p"] = json::array();
    for (const auto& p : f.p) e["p"].push_back(exact_string(p));
    e["q"] = exact_string(m.q()[i]);
    j["indices"].push_back(e);
  }
  return j;
}

Model model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("indices")) throw Error(ErrorKind::Parse, "model JSON needs an \"indices\" array");
  std::vector<IndexIFS> idx;
  std::vector<mpq_class> q;
  for (const auto& e : j.at("indices")) {
    IndexIFS f;
    f.label = e.value("label", std::string());
    f.r = parse_value(e.at("r"));
    for (const auto& t : e.at("t")) f.t.push_back(parse_value(t));
    for (const auto& p : e.at("p")) f.p.push_back(parse_weight(p));
    q.push_back(parse_weight(e.at("q")));
    idx.push_back(std::move(f));
  }
  Model m(std::move(idx), std::move(q));
  m.m = j.value("m", 1);
  if (j.contains("pair_i")) m.pair_i = j.at("pair_i").get<Word>();
  if (j.contains("pair_j")) m.pair_j = j.at("pair_j").get<Word>();
  return m;
}

BetaBase beta_from_json(const json& j) {
  if (j.is_string()) return BetaBase::parse(j.get<std::string>());
  if (j.is_number_integer()) return BetaBase::parse(std::to_string(j.get<long>()));
  if (j.is_array()) {
    std::string poly;
    const long deg = static_cast<long>(j.size()) - 1;
    for (long k = 0; k <= deg; ++k) {
      const long c = j.at(static_cast<std::size_t>(k)).get<long>();
      if (c == 0) continue;
      poly += (c < 0 ? " - " : " + ") + std::to_string(std::labs(c));
      if (deg - k > 0) poly += "*x^" + std::to_string(deg - k);
    }
    if (poly.empty()) throw Error(ErrorKind::Parse, "zero polynomial");
    return BetaBase::parse(poly);
  }
  throw Error(ErrorKind::Parse, "beta must be a string or an integer coefficient list");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Precondition, "cannot write " + path);
  out << text;
}

}  // namespace ssn
