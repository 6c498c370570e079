#include "nctoric/io.hpp"

#include "nctoric/error.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace nctoric::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

long long as_int(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    bad(where, "'" + s + "' is not an integer that fits in 64 bits");
  }
  bad(where, "expected an integer");
}

json int_to_json(long long v) { return v; }

LatticeVector vector_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a list of integers");
  LatticeVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = as_int(j[i], where + "/" + std::to_string(i));
  return v;
}

json vector_to_json(const LatticeVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(int_to_json(v(i)));
  return a;
}

ConeId cone_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return parse_cone(j.get<std::string>());
  if (!j.is_array()) bad(where, "expected a list of ray indices");
  ConeId c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(static_cast<int>(as_int(j[i], where)));
  std::sort(c.begin(), c.end());
  return c;
}

json cone_to_json(const ConeId& c) { return json(c); }

template <class F>
auto with_context(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError && std::string(e.what()).find(where) != std::string::npos) throw;
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::InvalidArgument)
      bad(where, e.what());
    throw;
  } catch (const json::exception& e) {
    bad(where, e.what());
  }
}

ReducedWord word_from_json(const json& j, int rank, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a word literal");
  return with_context(where, [&] { return parse_word(j.get<std::string>(), rank); });
}

GaussRational gauss_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return GaussRational(j.get<long long>());
  if (!j.is_string()) bad(where, "expected an exact number (integer or string)");
  return with_context(where, [&] { return parse_gauss(j.get<std::string>()); });
}

AlgElem alg_from_json(const json& j, int rank, const std::string& where) {
  if (!j.is_string()) bad(where, "expected an algebra-element literal");
  return with_context(where, [&] { return parse_alg(j.get<std::string>(), rank); });
}

}  // namespace

std::string base_dir_of(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  return parent.empty() ? std::string(".") : parent.string();
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw Error(ErrorKind::ParseError,
                origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, path + ": cannot write");
  out << j.dump(2) << "\n";
}

ConeId parse_cone(const std::string& key) {
  std::string s = key;
  if (s.size() >= 2 && s.front() == '{' && s.back() == '}') s = s.substr(1, s.size() - 2);
  ConeId c;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
    if (part.empty()) continue;
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size() || v < 0) throw std::invalid_argument(part);
      c.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "cone key '" + key + "' is not a list of ray indices");
    }
  }
  std::sort(c.begin(), c.end());
  return c;
}

RawFan raw_fan_from_json(const json& j) {
  RawFan raw;
  raw.rank = static_cast<int>(as_int(field(j, "rank", "fan"), "fan/rank"));
  const json& rays = field(j, "rays", "fan");
  if (!rays.is_array()) bad("fan/rays", "expected a list");
  for (std::size_t i = 0; i < rays.size(); ++i) raw.rays.push_back(vector_from_json(rays[i], "fan/rays/" + std::to_string(i)));
  const json& cones = field(j, "max_cones", "fan");
  if (!cones.is_array()) bad("fan/max_cones", "expected a list");
  for (std::size_t i = 0; i < cones.size(); ++i)
    raw.max_cones.push_back(cone_from_json(cones[i], "fan/max_cones/" + std::to_string(i)));
  if (auto it = j.find("certificates"); it != j.end()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string where = "fan/certificates/" + std::to_string(i);
      const json& c = (*it)[i];
      const json& pair = field(c, "pair", where);
      if (!pair.is_array() || pair.size() != 2) bad(where, "pair must list two cone indices");
      PairCertificate pc;
      pc.first = static_cast<std::size_t>(as_int(pair[0], where));
      pc.second = static_cast<std::size_t>(as_int(pair[1], where));
      pc.functional = vector_from_json(field(c, "functional", where), where + "/functional");
      raw.certificates.push_back(std::move(pc));
    }
  }
  return raw;
}

Fan fan_from_json(const json& j) { return validate_fan(raw_fan_from_json(j)); }

json fan_to_json(const Fan& fan) {
  json j;
  j["rank"] = fan.rank;
  j["rays"] = json::array();
  for (const auto& r : fan.rays) j["rays"].push_back(vector_to_json(r));
  j["max_cones"] = json::array();
  for (const auto& c : fan.max_cones) j["max_cones"].push_back(cone_to_json(c));
  j["certificates"] = json::array();
  for (const auto& c : fan.certificates)
    j["certificates"].push_back({{"pair", {c.first, c.second}}, {"functional", vector_to_json(c.functional)}});
  return j;
}

Fan fan_ref_from_json(const json& j, const std::string& base_dir) {
  if (j.is_string()) {
    std::filesystem::path p(j.get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    const auto path = p.string();
    return fan_from_json(read_json_file(path));
  }
  return fan_from_json(j);
}

ConeWords cone_words_from_json(const json& j, int rank) {
  if (!j.is_object()) bad("words", "expected a map from cone to word list");
  ConeWords out;
  for (const auto& [key, list] : j.items()) {
    const std::string where = "words/" + key;
    const ConeId c = parse_cone(key);
    if (!list.is_array()) bad(where, "expected a list of word literals");
    auto& v = out[c];
    for (std::size_t i = 0; i < list.size(); ++i) v.push_back(word_from_json(list[i], rank, where + "/" + std::to_string(i)));
  }
  return out;
}

json cone_words_to_json(const ConeWords& w) {
  json j = json::object();
  for (const auto& [c, words] : w) {
    json a = json::array();
    for (const auto& x : words) a.push_back(to_string(x));
    j[to_string(c)] = a;
  }
  return j;
}

AdmissibleSystem system_from_json(const json& j, const std::string& base_dir) {
  const Fan fan = fan_ref_from_json(field(j, "fan", "system"), base_dir);
  if (auto it = j.find("charts"); it != j.end()) {
    AdmissibleSystem sys;
    sys.fan = fan;
    const ConeWords charts = cone_words_from_json(*it, fan.rank);
    for (const auto& [c, gens] : charts) {
      if (!fan.is_face(c)) bad("system/charts", to_string(c) + " is not a cone of the fan");
      sys.chart.emplace(c, SubmonoidFG(fan.rank, gens));
    }
    for (const auto& c : fan.faces)
      if (!sys.chart.count(c)) bad("system/charts", "no chart for cone " + to_string(c));
    if (auto lt = j.find("lift_table"); lt != j.end()) {
      for (std::size_t i = 0; i < lt->size(); ++i) {
        const std::string where = "system/lift_table/" + std::to_string(i);
        const json& e = (*lt)[i];
        sys.lift_table.push_back({cone_from_json(field(e, "sigma", where), where),
                                  vector_from_json(field(e, "dual", where), where + "/dual"),
                                  word_from_json(field(e, "lift", where), fan.rank, where + "/lift")});
      }
    }
    if (auto pv = j.find("provenance"); pv != j.end()) {
      for (std::size_t i = 0; i < pv->size(); ++i) {
        const std::string where = "system/provenance/" + std::to_string(i);
        const json& e = (*pv)[i];
        sys.provenance.push_back({cone_from_json(field(e, "cone", where), where),
                                  word_from_json(field(e, "word", where), fan.rank, where + "/word"),
                                  field(e, "source", where).get<std::string>()});
      }
    }
    return sys;
  }
  ConeWords lifts;
  if (auto it = j.find("lifts"); it != j.end()) lifts = cone_words_from_json(*it, fan.rank);
  AdmissibleSystem sys = build_system(fan, lifts);
  if (auto it = j.find("extras"); it != j.end()) sys = augment_system(sys, cone_words_from_json(*it, fan.rank));
  return sys;
}

json system_to_json(const AdmissibleSystem& sys) {
  json j;
  j["fan"] = fan_to_json(sys.fan);
  ConeWords charts;
  for (const auto& [c, s] : sys.chart) charts[c] = s.generators();
  j["charts"] = cone_words_to_json(charts);
  j["lift_table"] = json::array();
  for (const auto& e : sys.lift_table)
    j["lift_table"].push_back({{"sigma", cone_to_json(e.sigma)}, {"dual", vector_to_json(e.dual)}, {"lift", to_string(e.lift)}});
  j["provenance"] = json::array();
  for (const auto& e : sys.provenance)
    j["provenance"].push_back({{"cone", cone_to_json(e.cone)}, {"word", to_string(e.word)}, {"source", e.source}});
  return j;
}

DivisorData divisor_from_json(const json& j, const Fan& fan) {
  DivisorData d;
  d.a.assign(fan.rays.size(), 0);
  const json& src = j.is_object() && j.contains("coefficients") ? j["coefficients"] : j;
  if (src.is_array()) {
    if (src.size() != fan.rays.size())
      bad("divisor", "expected " + std::to_string(fan.rays.size()) + " coefficients, got " + std::to_string(src.size()));
    for (std::size_t i = 0; i < src.size(); ++i) d.a[i] = as_int(src[i], "divisor/" + std::to_string(i));
    return d;
  }
  if (!src.is_object()) bad("divisor", "expected a map from ray index to integer");
  for (const auto& [key, v] : src.items()) {
    std::size_t used = 0;
    long long idx = -1;
    try {
      idx = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || idx < 0 || static_cast<std::size_t>(idx) >= fan.rays.size())
      bad("divisor/" + key, "not a ray index of the fan");
    d.a[static_cast<std::size_t>(idx)] = as_int(v, "divisor/" + key);
  }
  return d;
}

json divisor_to_json(const DivisorData& d) {
  json c = json::object();
  for (std::size_t i = 0; i < d.a.size(); ++i)
    if (d.a[i] != 0) c[std::to_string(i)] = d.a[i];
  return {{"coefficients", c}};
}

GluingData gluing_from_json(const json& j, int rank) {
  if (!j.is_array()) bad("gluing", "expected a list of transitions");
  GluingData g;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "gluing/" + std::to_string(i);
    const json& t = j[i];
    const ConeId sigma = cone_from_json(field(t, "sigma", where), where + "/sigma");
    const ConeId tau = cone_from_json(field(t, "tau", where), where + "/tau");
    Transition tr;
    tr.c = t.contains("c") ? gauss_from_json(t["c"], where + "/c") : GaussRational(1);
    tr.w = word_from_json(field(t, "w", where), rank, where + "/w");
    if (!g.transitions.emplace(Incidence{sigma, tau}, tr).second) bad(where, "duplicate transition");
  }
  return g;
}

json gluing_to_json(const GluingData& g) {
  json a = json::array();
  for (const auto& [k, t] : g.transitions)
    a.push_back({{"sigma", cone_to_json(k.first)}, {"tau", cone_to_json(k.second)}, {"c", to_string(t.c)}, {"w", to_string(t.w)}});
  return a;
}

Sheaf sheaf_from_json(const json& j, const std::string& base_dir) {
  Sheaf s;
  s.system = system_from_json(field(j, "system", "sheaf"), base_dir);
  const Fan& fan = s.system.fan;
  s.gluing = gluing_from_json(field(j, "gluing", "sheaf"), fan.rank);
  if (auto it = j.find("divisor"); it != j.end()) s.divisor = divisor_from_json(*it, fan);
  if (auto it = j.find("m"); it != j.end()) {
    for (const auto& [key, v] : it->items()) s.m.m[parse_cone(key)] = vector_from_json(v, "sheaf/m/" + key);
  }
  if (auto it = j.find("covering_choice"); it != j.end()) {
    for (const auto& [key, v] : it->items())
      s.m.covering_choice[parse_cone(key)] = static_cast<std::size_t>(as_int(v, "sheaf/covering_choice/" + key));
  }
  if (auto it = j.find("softening"); it != j.end()) {
    s.record.added = cone_words_from_json(field(*it, "added", "sheaf/softening"), fan.rank);
    for (const auto& c : field(*it, "invariant_charts", "sheaf/softening"))
      s.record.invariant_charts.push_back(cone_from_json(c, "sheaf/softening"));
  }
  return s;
}

json sheaf_to_json(const Sheaf& s) {
  json j;
  j["system"] = system_to_json(s.system);
  j["gluing"] = gluing_to_json(s.gluing);
  j["divisor"] = divisor_to_json(s.divisor);
  j["m"] = json::object();
  for (const auto& [c, v] : s.m.m) j["m"][to_string(c)] = vector_to_json(v);
  j["covering_choice"] = json::object();
  for (const auto& [c, i] : s.m.covering_choice) j["covering_choice"][to_string(c)] = i;
  json inv = json::array();
  for (const auto& c : s.record.invariant_charts) inv.push_back(cone_to_json(c));
  j["softening"] = {{"added", cone_words_to_json(s.record.added)}, {"invariant_charts", inv}};
  return j;
}

TwistedSection section_from_json(const json& j, const std::string& base_dir) {
  TwistedSection s;
  s.system = system_from_json(field(j, "system", "section"), base_dir);
  const int rank = s.system.rank();
  s.gluing = gluing_from_json(field(j, "gluing", "section"), rank);
  const json& pres = field(j, "presentation", "section");
  if (!pres.is_object()) bad("section/presentation", "expected a map from cone to algebra element");
  for (const auto& [key, v] : pres.items())
    s.presentation.emplace(parse_cone(key), alg_from_json(v, rank, "section/presentation/" + key));
  if (auto it = j.find("mprime"); it != j.end() && !it->is_null()) s.mprime = vector_from_json(*it, "section/mprime");
  return s;
}

json section_to_json(const TwistedSection& s) {
  json j;
  j["system"] = system_to_json(s.system);
  j["gluing"] = gluing_to_json(s.gluing);
  j["presentation"] = json::object();
  for (const auto& [c, a] : s.presentation) j["presentation"][to_string(c)] = to_string(a);
  if (s.mprime) j["mprime"] = vector_to_json(*s.mprime);
  return j;
}

Subscheme subscheme_from_json(const json& j, const std::string& base_dir) {
  Subscheme s;
  s.system = system_from_json(field(j, "system", "subscheme"), base_dir);
  const json& ideals = field(j, "ideals", "subscheme");
  if (!ideals.is_object()) bad("subscheme/ideals", "expected a map from cone to generator list");
  for (const auto& [key, list] : ideals.items()) {
    auto& v = s.ideals[parse_cone(key)];
    for (std::size_t i = 0; i < list.size(); ++i)
      v.push_back(alg_from_json(list[i], s.system.rank(), "subscheme/ideals/" + key + "/" + std::to_string(i)));
  }
  return s;
}

json subscheme_to_json(const Subscheme& s) {
  json j;
  j["system"] = system_to_json(s.system);
  j["ideals"] = json::object();
  for (const auto& [c, gens] : s.ideals) {
    json a = json::array();
    for (const auto& g : gens) a.push_back(to_string(g));
    j["ideals"][to_string(c)] = a;
  }
  return j;
}

QIMatrix matrix_from_json(const json& j, int r) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(r)) bad("matrix", "expected " + std::to_string(r) + " rows");
  QIMatrix m(r, r);
  for (int i = 0; i < r; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(r))
      bad("matrix/" + std::to_string(i), "expected " + std::to_string(r) + " entries");
    for (int k = 0; k < r; ++k)
      m(i, k) = gauss_from_json(row[static_cast<std::size_t>(k)], "matrix/" + std::to_string(i) + "/" + std::to_string(k));
  }
  return m;
}

json matrix_to_json(const QIMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

MorphismData morphism_from_json(const json& j, const std::string& base_dir) {
  MorphismData m;
  m.r = static_cast<int>(as_int(field(j, "rank_r", "morphism"), "morphism/rank_r"));
  if (m.r < 1) bad("morphism/rank_r", "must be positive");
  m.system = system_from_json(field(j, "system", "morphism"), base_dir);
  const int rank = m.system.rank();
  const json& charts = field(j, "charts", "morphism");
  if (!charts.is_object()) bad("morphism/charts", "expected a map from cone to chart");
  for (const auto& [key, c] : charts.items()) {
    const std::string where = "morphism/charts/" + key;
    QuasiHomChart chart;
    chart.cone = parse_cone(key);
    chart.identity_image = with_context(where + "/e", [&] { return matrix_from_json(field(c, "e", where), m.r); });
    if (auto it = c.find("images"); it != c.end())
      for (const auto& [w, mat] : it->items())
        chart.images[with_context(where + "/images", [&] { return parse_word(w, rank); })] =
            with_context(where + "/images/" + w, [&] { return matrix_from_json(mat, m.r); });
    if (auto it = c.find("witnesses"); it != c.end())
      for (const auto& [w, mat] : it->items())
        chart.inverse_witnesses[with_context(where + "/witnesses", [&] { return parse_word(w, rank); })] =
            with_context(where + "/witnesses/" + w, [&] { return matrix_from_json(mat, m.r); });
    m.charts.emplace(chart.cone, std::move(chart));
  }
  return m;
}

json morphism_to_json(const MorphismData& m) {
  json j;
  j["rank_r"] = m.r;
  j["system"] = system_to_json(m.system);
  j["charts"] = json::object();
  for (const auto& [c, chart] : m.charts) {
    json cj;
    cj["e"] = matrix_to_json(chart.identity_image);
    cj["images"] = json::object();
    for (const auto& [w, mat] : chart.images) cj["images"][to_string(w)] = matrix_to_json(mat);
    if (!chart.inverse_witnesses.empty()) {
      cj["witnesses"] = json::object();
      for (const auto& [w, mat] : chart.inverse_witnesses) cj["witnesses"][to_string(w)] = matrix_to_json(mat);
    }
    j["charts"][to_string(c)] = cj;
  }
  return j;
}

}  // namespace nctoric::io
