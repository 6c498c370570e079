// Command-line front end: parses artifact files, runs one operation and
// prints a report. Exit codes: 0 pass, 1 fail, 2 usage or parse error,
// 3 bound-relative.

#include "nctoric/azumaya.hpp"
#include "nctoric/deltasystem.hpp"
#include "nctoric/error.hpp"
#include "nctoric/io.hpp"
#include "nctoric/sheaves.hpp"

#include "CLI11.hpp"

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace nctoric;
using nlohmann::json;

namespace {

struct Options {
  bool as_json = false;
  bool verbose = false;
  std::string out;
  std::size_t bound = 0;
  std::uint64_t seed = 0;
};

Options opts;

/// Clause cited when an operation throws instead of reporting.
int emit(const Report& rep, const json& result = nullptr, const std::string& text = {}) {
  if (opts.as_json) {
    json j{{"report", rep.to_json()}};
    if (!result.is_null()) j["result"] = result;
    std::cout << j.dump(2) << "\n";
  } else {
    if (!text.empty()) std::cout << text;
    std::cout << rep.to_text(opts.verbose);
  }
  return exit_code(rep.status());
}

void save(const json& j, const std::string& what) {
  if (opts.out.empty()) return;
  io::write_json_file(opts.out, j);
  if (!opts.as_json) std::cout << "wrote " << what << " to " << opts.out << "\n";
}

/// A fan file, or any artifact carrying a system.
AdmissibleSystem load_system(const std::string& path) {
  const json j = io::read_json_file(path);
  const std::string base = io::base_dir_of(path);
  if (j.is_object() && j.contains("rays")) return build_system(io::fan_from_json(j));
  if (j.is_object() && j.contains("fan")) return io::system_from_json(j, base);
  if (j.is_object() && j.contains("system")) return io::system_from_json(j["system"], base);
  throw Error(ErrorKind::ParseError, path + ": neither a fan nor a system");
}

Fan load_fan(const std::string& path) {
  const json j = io::read_json_file(path);
  if (j.is_object() && j.contains("rays")) return io::fan_from_json(j);
  return load_system(path).fan;
}

LatticeVector parse_point(const std::string& text) {
  LatticeVector v;
  std::vector<long long> xs;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      xs.push_back(std::stoll(part, &used));
      while (used < part.size() && std::isspace(static_cast<unsigned char>(part[used]))) ++used;
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "point '" + text + "' is not a comma-separated integer list");
    }
  }
  v.resize(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
  return v;
}

std::vector<GaussRational> parse_coeffs(const std::string& text) {
  std::vector<GaussRational> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_gauss(part));
  return out;
}

std::string point_list_text(const std::vector<LatticeVector>& pts) {
  std::string s;
  for (const auto& p : pts) s += "  " + to_string(p) + "\n";
  return s;
}

// ---- commands ----

int fan_check(const std::string& path) {
  const json j = io::read_json_file(path);
  const RawFan raw = io::raw_fan_from_json(j);
  Report rep("fan " + path);
  try {
    const Fan fan = validate_fan(raw);
    rep.pass("Assumption 2.2.2", "fan",
             std::to_string(fan.max_cones.size()) + " maximal cones, " + std::to_string(fan.faces.size()) + " cones");
    return emit(rep, io::fan_to_json(fan));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    rep.fail(std::string(clause_for(e.kind())), "fan", e.what());
    return emit(rep);
  }
}

int system_build(const std::string& path, const std::string& lifts_path) {
  AdmissibleSystem sys;
  const json j = io::read_json_file(path);
  if (j.contains("rays")) {
    const Fan fan = io::fan_from_json(j);
    ConeWords lifts;
    if (!lifts_path.empty()) lifts = io::cone_words_from_json(io::read_json_file(lifts_path), fan.rank);
    sys = build_system(fan, lifts);
  } else {
    sys = io::system_from_json(j, io::base_dir_of(path));
  }
  const Report rep = check_admissible(sys);
  const json out = io::system_to_json(sys);
  save(out, "system");
  return emit(rep, opts.out.empty() ? out : json(nullptr));
}

int system_extend(const std::string& path, const std::string& extras_path, bool softening) {
  const AdmissibleSystem sys = load_system(path);
  const ConeWords extras = io::cone_words_from_json(io::read_json_file(extras_path), sys.rank());
  AdmissibleSystem next;
  std::string text;
  if (softening) {
    auto [soft, record] = soften(sys, extras);
    next = std::move(soft);
    for (const auto& [c, ws] : record.added) {
      text += "added on " + to_string(c) + ":";
      for (const auto& w : ws) text += " " + to_string(w);
      text += "\n";
    }
  } else {
    next = augment_system(sys, extras);
  }
  const Report rep = check_admissible(next);
  const json out = io::system_to_json(next);
  save(out, "system");
  return emit(rep, opts.out.empty() ? out : json(nullptr), text);
}

int system_check(const std::string& path) { return emit(check_admissible(load_system(path))); }

int sheaf_from_divisor_cmd(const std::string& path, const std::string& divisor_path) {
  const AdmissibleSystem sys = load_system(path);
  const DivisorData d = io::divisor_from_json(io::read_json_file(divisor_path), sys.fan);
  const Sheaf sh = sheaf_from_divisor(sys, d);
  Report rep = check_gluing(sh.system, sh.gluing);
  for (const auto& sigma : sys.fan.max_cones)
    if (sh.system.at(sigma).generators() != sys.at(sigma).generators())
      rep.fail("Def 2.2.14", to_string(sigma), "softening changed a maximal chart");
  const json out = io::sheaf_to_json(sh);
  save(out, "sheaf");
  return emit(rep, opts.out.empty() ? out : json(nullptr));
}

int sheaf_check(const std::string& path) {
  const Sheaf sh = io::sheaf_from_json(io::read_json_file(path), io::base_dir_of(path));
  Report rep = check_admissible(sh.system);
  rep.merge(check_gluing(sh.system, sh.gluing));
  return emit(rep);
}

int sheaf_isom(const std::string& a_path, const std::string& b_path) {
  const Sheaf a = io::sheaf_from_json(io::read_json_file(a_path), io::base_dir_of(a_path));
  const Sheaf b = io::sheaf_from_json(io::read_json_file(b_path), io::base_dir_of(b_path));
  if (!(a.system.fan == b.system.fan)) throw Error(ErrorKind::MismatchedSystems, "sheaves live on different fans");
  // compare over one system softening both
  ConeWords extras;
  for (const auto& [c, chart] : b.system.chart)
    if (!a.system.fan.is_maximal(c))
      for (const auto& g : chart.generators())
        if (!a.system.at(c).accepts(g)) extras[c].push_back(g);
  const AdmissibleSystem common = soften(a.system, extras).first;
  Report rep("isomorphism " + a_path + " ~ " + b_path);
  const auto cand = derive_isomorphism_candidate(common.fan, a.gluing, b.gluing);
  json result{{"isomorphic", false}};
  if (!cand) {
    rep.fail("Lemma 3.4", "all cones", "scalar transitions admit no consistent rescaling");
    return emit(rep, result);
  }
  try {
    if (sheaves_isomorphic(common, a.gluing, b.gluing, *cand)) {
      rep.pass("Lemma 3.4", "all incidences", "derived local rescalings identify the gluing data");
      result["isomorphic"] = true;
    } else {
      rep.fail("Lemma 3.4", "all incidences", "derived candidate does not identify the gluing data");
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CandidateNotUnit) throw;
    rep.fail("Lemma 3.4", "all cones", e.what());
  }
  return emit(rep, result);
}

int section_list(const std::string& path, const std::string& divisor_path) {
  const Fan fan = load_fan(path);
  const DivisorData d = io::divisor_from_json(io::read_json_file(divisor_path), fan);
  const auto pts = polytope_sections(fan, d);
  Report rep("lattice points of P_D");
  rep.pass("Prop 3.8", "P_D", std::to_string(pts.size()) + " lattice points");
  json result = json::array();
  for (const auto& p : pts) {
    json v = json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) v.push_back(p(i));
    result.push_back(v);
  }
  return emit(rep, result, point_list_text(pts));
}

int section_extend(const std::string& sheaf_path, const std::string& point) {
  const Sheaf sh = io::sheaf_from_json(io::read_json_file(sheaf_path), io::base_dir_of(sheaf_path));
  const ExtendedSection ex = extend_section(sh.system, sh.gluing, sh.m, parse_point(point));
  const Report rep = check_twisted_section(ex.section);
  const json out = io::section_to_json(ex.section);
  save(out, "section");
  std::string text;
  for (const auto& [c, r] : ex.section.presentation) text += "  r" + to_string(c) + " = " + to_string(r) + "\n";
  return emit(rep, opts.out.empty() ? out : json(nullptr), text);
}

int section_check(const std::string& path) {
  return emit(check_twisted_section(io::section_from_json(io::read_json_file(path), io::base_dir_of(path))));
}

int subscheme_build(const std::vector<std::string>& paths, const std::string& combine) {
  std::vector<TwistedSection> secs;
  for (const auto& p : paths) secs.push_back(io::section_from_json(io::read_json_file(p), io::base_dir_of(p)));
  const AdmissibleSystem common = common_softening(secs);
  Report rep("subscheme");
  for (auto& s : secs) {
    s = pullback(s, common);
    rep.merge(check_twisted_section(s));
  }
  if (!combine.empty()) {
    const auto coeffs = parse_coeffs(combine);
    secs = {combine_sections(secs, coeffs)};
    const Report combined = check_twisted_section(secs.front());
    if (combined.ok()) {
      rep.pass("Def 3.6", "combination", "linear combination is a twisted section");
    } else {
      rep.info("Def 3.6", "combination",
               "linear combination is not a twisted section chart-wise; ideals are still formed from its presentations");
    }
  }
  io::Subscheme sub{common, subscheme_from_sections(secs)};
  rep.pass("Def 3.9", "all cones", std::to_string(secs.size()) + " generator(s) per chart");
  const json out = io::subscheme_to_json(sub);
  save(out, "subscheme");
  std::string text;
  for (const auto& [c, gens] : sub.ideals) {
    text += "  I" + to_string(c) + " = (";
    for (std::size_t i = 0; i < gens.size(); ++i) text += (i ? ", " : "") + to_string(gens[i]);
    text += ")\n";
  }
  return emit(rep, opts.out.empty() ? out : json(nullptr), text);
}

int subscheme_member(const std::string& path, const std::string& cone, const std::string& element) {
  const io::Subscheme sub = io::subscheme_from_json(io::read_json_file(path), io::base_dir_of(path));
  const ConeId c = io::parse_cone(cone);
  const AlgElem target = parse_alg(element, sub.system.rank());
  if (!sub.ideals.count(c)) throw Error(ErrorKind::InvalidArgument, "no ideal on cone " + to_string(c));
  std::size_t bound = opts.bound;
  if (bound == 0) {
    bound = target.max_length();
    for (const auto& g : sub.ideals.at(c)) bound = std::max(bound, g.max_length());
    bound += 2;
  }
  const BoundedIdeal ideal = chart_ideal(sub.ideals, sub.system, c, bound);
  const MembershipResult res = bounded_ideal_member(ideal, target);
  Report rep("ideal membership on " + to_string(c));
  json result{{"bound", bound}, {"columns", res.columns}, {"rows", res.rows}};
  std::string text;
  if (res.found()) {
    rep.pass("Def 3.9", to_string(c), "certificate found at bound " + std::to_string(bound));
    result["certificate"] = res.certificate->describe(ideal);
    text = "  " + res.certificate->describe(ideal) + "\n";
  } else {
    rep.bound_relative("Def 3.9", to_string(c),
                       "no certificate with words of length <= " + std::to_string(bound) + "; not a proof of non-membership");
  }
  return emit(rep, result, text);
}

MorphismData load_morphism(const std::string& path) {
  return io::morphism_from_json(io::read_json_file(path), io::base_dir_of(path));
}

int morphism_check(const std::string& path) { return emit(verify_morphism(load_morphism(path))); }

int morphism_sample(const std::string& path, int r, const std::string& pattern_path) {
  const AdmissibleSystem sys = load_system(path);
  std::optional<std::map<ConeId, QIMatrix>> pattern;
  if (!pattern_path.empty()) {
    const json j = io::read_json_file(pattern_path);
    pattern.emplace();
    for (const auto& [key, mat] : j.items()) (*pattern)[io::parse_cone(key)] = io::matrix_from_json(mat, r);
  }
  const MorphismData m = sample_matrix_model(sys, r, pattern, opts.seed);
  const Report rep = verify_morphism(m);
  const json out = io::morphism_to_json(m);
  save(out, "morphism");
  return emit(rep, opts.out.empty() ? out : json(nullptr));
}

int morphism_surrogate(const std::string& path) {
  const auto basis = surrogate_basis(load_morphism(path));
  Report rep("surrogate algebra");
  rep.pass("Def 4.2.12", "all charts", "dimension " + std::to_string(basis.size()));
  json result{{"dimension", basis.size()}, {"basis", json::array()}};
  std::string text;
  for (const auto& b : basis) {
    result["basis"].push_back(io::matrix_to_json(b));
    text += "  " + to_string(b) + "\n";
  }
  return emit(rep, result, text);
}

int morphism_kernel(const std::string& path, const std::string& cone) {
  const MorphismData m = load_morphism(path);
  const std::size_t bound = opts.bound ? opts.bound : 2;
  const ConeId c = io::parse_cone(cone);
  const BoundedIdeal k = image_kernel_bounded(m, c, bound);
  Report rep("kernel on " + to_string(c));
  rep.bound_relative("Def 4.2.13", to_string(c),
                     std::to_string(k.generators.size()) + " kernel elements among generator products of length <= " +
                         std::to_string(bound));
  json result = json::array();
  std::string text;
  for (const auto& g : k.generators) {
    result.push_back(to_string(g));
    text += "  " + to_string(g) + "\n";
  }
  return emit(rep, result, text);
}

int probe_a1(const std::string& matrix) {
  const json j = matrix.find('[') != std::string::npos ? io::parse_json_text(matrix, "--matrix")
                                                      : io::read_json_file(matrix);
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "matrix must be a list of rows");
  const QIMatrix a = io::matrix_from_json(j, static_cast<int>(j.size()));
  const A1Probe p = a1_probe(a);
  Report rep("A^1 probe");
  rep.pass("Example 2.1.9", "a", "minimal polynomial " + polynomial_to_string(p.minpoly));
  json result{{"minpoly", polynomial_to_string(p.minpoly)}, {"roots", json::array()}};
  std::string text = "  minpoly: " + polynomial_to_string(p.minpoly) + "\n";
  for (const auto& r : p.roots) {
    result["roots"].push_back({{"value", to_string(r.value)}, {"multiplicity", r.multiplicity},
                               {"fiber_dimension", r.fiber_dimension}});
    text += "  t = " + to_string(r.value) + ": fiber dimension " + std::to_string(r.fiber_dimension) + "\n";
  }
  if (!p.unsplit.empty()) {
    result["unsplit"] = polynomial_to_string(p.unsplit);
    rep.info("Example 2.1.9", "a", "factor without roots in Q(i): " + polynomial_to_string(p.unsplit));
  }
  return emit(rep, result, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soft noncommutative toric schemes: construction and verification"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [](CLI::App* c) {
    c->add_flag("--json", opts.as_json, "Print the report as JSON");
    c->add_flag("-v,--verbose", opts.verbose, "List passing checks too");
  };
  std::function<int()> run;
  std::string file, file2, extras, divisor, lifts, point, combine, cone, element, pattern, matrix;
  std::vector<std::string> files;
  int r = 2;

  auto* fan = app.add_subcommand("fan", "Fans")->require_subcommand(1);
  auto* fan_check_cmd = fan->add_subcommand("check", "Validate a fan file");
  fan_check_cmd->add_option("fan", file)->required();
  common(fan_check_cmd);
  fan_check_cmd->callback([&] { run = [&] { return fan_check(file); }; });

  auto* sys = app.add_subcommand("system", "Admissible Delta-systems")->require_subcommand(1);
  auto* sys_build = sys->add_subcommand("build", "Build the canonical system of a fan");
  sys_build->add_option("input", file, "Fan file or system recipe")->required();
  sys_build->add_option("--lifts", lifts, "Lifts file: cone -> words");
  sys_build->add_option("--out", opts.out);
  common(sys_build);
  sys_build->callback([&] { run = [&] { return system_build(file, lifts); }; });
  for (const char* name : {"augment", "soften"}) {
    const bool softening = std::string(name) == "soften";
    auto* c = sys->add_subcommand(name, softening ? "Soften non-maximal charts" : "Augment charts");
    c->add_option("system", file)->required();
    c->add_option("--extras", extras, "Extras file: cone -> words")->required();
    c->add_option("--out", opts.out);
    common(c);
    c->callback([&, softening] { run = [&, softening] { return system_extend(file, extras, softening); }; });
  }
  auto* sys_check = sys->add_subcommand("check", "Check admissibility");
  sys_check->add_option("system", file)->required();
  common(sys_check);
  sys_check->callback([&] { run = [&] { return system_check(file); }; });

  auto* sheaf = app.add_subcommand("sheaf", "Invertible sheaves")->require_subcommand(1);
  auto* sh_div = sheaf->add_subcommand("from-divisor", "Sheaf of a toric divisor");
  sh_div->add_option("input", file, "Fan or system file")->required();
  sh_div->add_option("--divisor", divisor)->required();
  sh_div->add_option("--out", opts.out);
  common(sh_div);
  sh_div->callback([&] { run = [&] { return sheaf_from_divisor_cmd(file, divisor); }; });
  auto* sh_check = sheaf->add_subcommand("check", "Check gluing data");
  sh_check->add_option("sheaf", file)->required();
  common(sh_check);
  sh_check->callback([&] { run = [&] { return sheaf_check(file); }; });
  auto* sh_isom = sheaf->add_subcommand("isom", "Test two sheaves for isomorphism");
  sh_isom->add_option("first", file)->required();
  sh_isom->add_option("second", file2)->required();
  common(sh_isom);
  sh_isom->callback([&] { run = [&] { return sheaf_isom(file, file2); }; });

  auto* section = app.add_subcommand("section", "Sections")->require_subcommand(1);
  auto* sec_list = section->add_subcommand("list", "Lattice points of P_D");
  sec_list->add_option("input", file, "Fan or system file")->required();
  sec_list->add_option("--divisor", divisor)->required();
  common(sec_list);
  sec_list->callback([&] { run = [&] { return section_list(file, divisor); }; });
  auto* sec_ext = section->add_subcommand("extend", "Extend a monomial section to a twisted section");
  sec_ext->add_option("sheaf", file)->required();
  sec_ext->add_option("--point", point, "Lattice point, e.g. 1,0")->required();
  sec_ext->add_option("--out", opts.out);
  common(sec_ext);
  sec_ext->callback([&] { run = [&] { return section_extend(file, point); }; });
  auto* sec_check = section->add_subcommand("check", "Check a twisted section");
  sec_check->add_option("section", file)->required();
  common(sec_check);
  sec_check->callback([&] { run = [&] { return section_check(file); }; });

  auto* sub = app.add_subcommand("subscheme", "Subschemes cut out by sections")->require_subcommand(1);
  auto* sub_build = sub->add_subcommand("build", "Ideal data from sections over a common softening");
  sub_build->add_option("sections", files)->required();
  sub_build->add_option("--combine", combine, "Coefficients: take one linear combination");
  sub_build->add_option("--out", opts.out);
  common(sub_build);
  sub_build->callback([&] { run = [&] { return subscheme_build(files, combine); }; });
  auto* sub_member = sub->add_subcommand("member", "Bounded ideal membership on one chart");
  sub_member->add_option("subscheme", file)->required();
  sub_member->add_option("--cone", cone)->required();
  sub_member->add_option("--element", element)->required();
  sub_member->add_option("--bound", opts.bound);
  common(sub_member);
  sub_member->callback([&] { run = [&] { return subscheme_member(file, cone, element); }; });

  auto* mor = app.add_subcommand("morphism", "Morphisms from Azumaya points")->require_subcommand(1);
  auto* mor_check = mor->add_subcommand("check", "Verify a morphism");
  mor_check->add_option("morphism", file)->required();
  common(mor_check);
  mor_check->callback([&] { run = [&] { return morphism_check(file); }; });
  auto* mor_sample = mor->add_subcommand("sample", "Seeded random matrix model");
  mor_sample->add_option("input", file, "Fan or system file")->required();
  mor_sample->add_option("--r", r, "Matrix size")->check(CLI::PositiveNumber);
  mor_sample->add_option("--pattern", pattern, "Idempotent pattern: cone -> matrix");
  mor_sample->add_option("--seed", opts.seed);
  mor_sample->add_option("--out", opts.out);
  common(mor_sample);
  mor_sample->callback([&] { run = [&] { return morphism_sample(file, r, pattern); }; });
  auto* mor_sur = mor->add_subcommand("surrogate", "Basis of the surrogate algebra");
  mor_sur->add_option("morphism", file)->required();
  common(mor_sur);
  mor_sur->callback([&] { run = [&] { return morphism_surrogate(file); }; });
  auto* mor_ker = mor->add_subcommand("kernel", "Bounded kernel of one chart map");
  mor_ker->add_option("morphism", file)->required();
  mor_ker->add_option("--cone", cone)->required();
  mor_ker->add_option("--bound", opts.bound);
  common(mor_ker);
  mor_ker->callback([&] { run = [&] { return morphism_kernel(file, cone); }; });

  auto* probe = app.add_subcommand("probe", "Probes")->require_subcommand(1);
  auto* probe_a1_cmd = probe->add_subcommand("a1", "Minimal polynomial and fibers of a matrix");
  probe_a1_cmd->add_option("--matrix", matrix, "JSON rows or a file")->required();
  common(probe_a1_cmd);
  probe_a1_cmd->callback([&] { run = [&] { return probe_a1(matrix); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return run();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) {
      std::cerr << "parse error: " << e.what() << "\n";
      return 2;
    }
    Report rep("operation");
    rep.fail(std::string(clause_for(e.kind())), "input", e.what());
    return emit(rep);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
