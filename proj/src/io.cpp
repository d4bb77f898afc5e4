#include "khinlab/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "khinlab/errors.hpp"

namespace khinlab {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::parse_error, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string number_text(const json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.dump();
  fail(ErrorKind::parse_error, std::string(what) + " must be a decimal string");
}

std::vector<WeightAtom> atoms_from_json(const json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
    fail(ErrorKind::parse_error, "independent weight block needs an \"atoms\" array");
  std::vector<WeightAtom> atoms;
  for (const auto& a : j["atoms"]) {
    if (!a.is_object() || !a.contains("value") || !a.contains("prob"))
      fail(ErrorKind::parse_error, "each atom needs \"value\" and \"prob\"");
    atoms.push_back({parse_decimal(number_text(a["value"], "atom value")),
                     parse_decimal(number_text(a["prob"], "atom prob"))});
  }
  return atoms;
}

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

} // namespace

CoefficientVector load_coefficients(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    fail(ErrorKind::parse_error, "'" + path.string() + "' is empty");

  std::vector<std::string> entries;
  if (text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      fail(ErrorKind::parse_error, "'" + path.string() + "': " + e.what());
    }
    if (!j.is_array()) fail(ErrorKind::parse_error, "coefficient JSON must be an array");
    for (const auto& item : j) entries.push_back(number_text(item, "coefficient"));
  } else {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream fields(line);
      std::string tok;
      while (fields >> tok) entries.push_back(tok);
    }
  }
  if (entries.empty()) fail(ErrorKind::parse_error, "'" + path.string() + "' has no coefficients");
  return CoefficientVector::from_strings(entries);
}

WeightSpec weight_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorKind::parse_error, "weight spec must be a JSON object");
  if (j.contains("independent")) return WeightSpec::independent(atoms_from_json(j["independent"]));
  if (j.contains("sign_function")) {
    const auto& sf = j["sign_function"];
    if (!sf.is_object() || !sf.contains("k") || !sf.contains("values"))
      fail(ErrorKind::parse_error, "sign_function block needs \"k\" and \"values\"");
    if (!sf["k"].is_number_integer())
      fail(ErrorKind::parse_error, "sign_function \"k\" must be an integer");
    const int k = sf["k"].get<int>();
    if (!sf["values"].is_array())
      fail(ErrorKind::parse_error, "sign_function \"values\" must be an array");
    std::vector<Decimal> table;
    for (const auto& v : sf["values"]) table.push_back(parse_decimal(number_text(v, "table value")));
    std::vector<WeightAtom> aux;
    if (sf.contains("aux")) aux = atoms_from_json(sf["aux"]);
    return WeightSpec::sign_function(k, std::move(table), std::move(aux));
  }
  fail(ErrorKind::parse_error, "weight spec needs \"independent\" or \"sign_function\"");
}

WeightSpec load_weight(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    fail(ErrorKind::parse_error, "'" + path.string() + "': " + e.what());
  }
  return weight_from_json(j);
}

json weight_to_json(const WeightSpec& w) {
  const auto atoms = [&] {
    json arr = json::array();
    for (const auto& a : w.atoms())
      arr.push_back({{"value", a.value.text}, {"prob", a.prob.text}});
    return json{{"atoms", std::move(arr)}};
  };
  if (w.depth() == 0) return {{"independent", atoms()}};
  json values = json::array();
  for (const auto& v : w.table()) values.push_back(v.text);
  json sf = {{"k", w.depth()}, {"values", std::move(values)}};
  if (w.atoms().size() > 1 || w.atoms()[0].value.text != "1") sf["aux"] = atoms();
  return {{"sign_function", std::move(sf)}};
}

json moment_report_to_json(const MomentReport& report, const std::string& p_text,
                           const CoefficientVector& coeffs) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["p"] = p_text;
  j["p_value"] = report.p;
  j["absolute_moment"] = report.absolute_moment;
  j["norm"] = report.norm;
  j["second_norm"] = report.second_norm;
  j["method"] = report.method == MomentMethod::exact ? "exact" : "monte-carlo";
  j["standard_error"] = report.standard_error;
  j["sample_count"] = report.sample_count;
  json echoed = json::array();
  for (const auto& d : coeffs.decimals()) echoed.push_back(d.text);
  j["coefficients"] = std::move(echoed);
  return j;
}

json constants_report_to_json(const ConstantsReport& report, const std::string& p_text,
                              const std::string& q_text) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["mode"] = to_string(report.mode);
  j["p"] = p_text;
  j["q"] = q_text;
  j["p_value"] = report.p;
  j["q_value"] = report.q;
  j["r"] = report.r;
  j["s"] = report.s;
  j["b"] = report.b;
  j["a"] = report.a;
  j["tau"] = report.tau;
  j["delta0"] = report.delta0;
  j["t"] = report.t;
  j["L"] = report.L;
  j["C1"] = report.C1;
  j["k_r2"] = report.k_r2;
  j["w_q"] = report.w_q;
  j["C2"] = report.C2;
  return j;
}

json suite_report_to_json(const SuiteReport& report) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["case_count"] = report.case_count;
  j["pass_count"] = report.pass_count;
  j["wall_time_seconds"] = report.wall_time_seconds;
  json failures = json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"case_index", f.case_index},
                        {"case_seed", f.case_seed},
                        {"inputs", f.inputs},
                        {"expected_bound", f.expected_bound},
                        {"observed", f.observed}});
  }
  j["failures"] = std::move(failures);
  return j;
}

json counterexample_to_json(const CounterexampleReport& report) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["s"] = report.s;
  j["coeff_norm2"] = report.coeff_norm2;
  j["literal_pair"] = {{"xi", "r1 + r2"}, {"norm_p1", report.literal_norm_p1}};
  json dist = json::array();
  for (const auto& e : report.corrected_dist.entries)
    dist.push_back({{"value", e.value}, {"prob", e.prob}, {"prob_exact", e.exact_prob}});
  j["corrected_pair"] = {{"xi", "r1 - r2"},
                         {"norm_p1", report.corrected_norm_p1},
                         {"norm_p2", report.corrected_norm_p2},
                         {"distribution", std::move(dist)},
                         {"exact", report.exact}};
  j["classic_threshold"] = report.classic_threshold;
  j["refined_threshold"] = report.refined_threshold;
  j["classic_rejected"] = report.classic_rejected;
  j["refined_rejected"] = report.refined_rejected;
  return j;
}

std::string suite_report_to_csv(const SuiteReport& report) {
  std::ostringstream os;
  os << "suite,seed,case_count,pass_count,failure_count,wall_time_seconds\n";
  os << report.suite << ',' << report.seed << ',' << report.case_count << ','
     << report.pass_count << ',' << report.failures.size() << ',' << report.wall_time_seconds
     << '\n';
  for (const auto& f : report.failures) {
    std::string inputs = f.inputs;
    for (auto& c : inputs)
      if (c == ',') c = ';';
    os << "failure," << f.case_index << ',' << f.case_seed << ",\"" << inputs << "\","
       << f.expected_bound << ',' << f.observed << '\n';
  }
  return os.str();
}

std::string suite_report_to_human(const SuiteReport& report) {
  std::ostringstream os;
  os << "suite            " << report.suite << '\n'
     << "seed             " << report.seed << '\n'
     << "cases            " << report.case_count << '\n'
     << "passes           " << report.pass_count << '\n'
     << "failures         " << report.failures.size() << '\n'
     << "wall time (s)    " << format_sig12(report.wall_time_seconds) << '\n';
  for (const auto& f : report.failures) {
    os << "  case " << f.case_index << " seed " << f.case_seed << ": observed "
       << format_sig12(f.observed) << " vs bound " << format_sig12(f.expected_bound) << "  ["
       << f.inputs << "]\n";
  }
  return os.str();
}

std::string constants_report_to_human(const ConstantsReport& report) {
  std::ostringstream os;
  const auto row = [&](const char* name, double v) {
    os << name << std::string(8 - std::string(name).size(), ' ') << format_sig12(v) << '\n';
  };
  os << "mode    " << to_string(report.mode) << '\n';
  row("p", report.p);
  row("q", report.q);
  row("r", report.r);
  row("s", report.s);
  row("b", report.b);
  row("a", report.a);
  row("tau", report.tau);
  row("delta0", report.delta0);
  row("t", report.t);
  row("L", report.L);
  row("C1", report.C1);
  row("k_r2", report.k_r2);
  row("w_q", report.w_q);
  row("C2", report.C2);
  return os.str();
}

std::string counterexample_to_human(const CounterexampleReport& report) {
  std::ostringstream os;
  os << "weight w = 1_{r1+r2 != 0}, s = P(w != 0) = " << format_sig12(report.s) << '\n'
     << "coefficients x = (1, -1), ||x||_2 = " << format_sig12(report.coeff_norm2) << '\n'
     << "printed pair  (xi = r1 + r2): ||w xi||_1 = " << format_sig12(report.literal_norm_p1)
     << "  (w xi = xi; the two-sided bound survives)\n"
     << "intended pair (xi = r1 - r2): ||w xi||_1 = " << format_sig12(report.corrected_norm_p1)
     << ", ||w xi||_2 = " << format_sig12(report.corrected_norm_p2)
     << (report.exact ? "  (exact: w xi = 0 on every pattern)" : "") << '\n'
     << "lower bound fails: 0 < ||x||_2, no constant can bridge it\n"
     << "classic mode rejects s = 1/2 (needs s > " << format_sig12(report.classic_threshold)
     << "): " << (report.classic_rejected ? "yes" : "NO") << '\n'
     << "refined mode rejects s = 1/2 (needs s > " << format_sig12(report.refined_threshold)
     << "): " << (report.refined_rejected ? "yes" : "NO") << '\n';
  return os.str();
}

} // namespace khinlab
