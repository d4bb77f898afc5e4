// khinlab command line: exact and Monte Carlo moments of weighted Rademacher
// sums, the constructive two-sided-bound constants, reference constants, and
// the property suites. Batch only; all randomness flows from --seed.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "khinlab/constants.hpp"
#include "khinlab/errors.hpp"
#include "khinlab/io.hpp"
#include "khinlab/montecarlo.hpp"
#include "khinlab/rademacher.hpp"
#include "khinlab/verifier.hpp"
#include "khinlab/weighted.hpp"

namespace {

using nlohmann::json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDimension = 3;
constexpr int kExitThreshold = 4;

int exit_code_for(const khinlab::Error& e) {
  switch (e.kind()) {
    case khinlab::ErrorKind::dimension_too_large:
      return kExitDimension;
    case khinlab::ErrorKind::s_below_threshold:
      return kExitThreshold;
    default:
      return kExitUsage;
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) khinlab::fail(khinlab::ErrorKind::parse_error, "cannot write '" + out_path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

struct CommonOpts {
  std::string out_path;
  std::string format = "json";
  int n_max = khinlab::kDefaultNMax;
};

int run_moments(const std::string& coeff_path, const std::vector<std::string>& p_texts,
                const std::string& weight_path, bool use_mc, std::uint64_t samples,
                std::uint64_t seed, const CommonOpts& common) {
  const khinlab::CoefficientVector coeffs = khinlab::load_coefficients(coeff_path);
  std::optional<khinlab::WeightSpec> weight;
  if (!weight_path.empty()) weight = khinlab::load_weight(weight_path);
  const khinlab::WeightSpec* w = weight ? &*weight : nullptr;

  json reports = json::array();
  for (const auto& p_text : p_texts) {
    const khinlab::Decimal p = khinlab::parse_decimal(p_text);
    khinlab::MomentReport rep;
    if (use_mc) {
      khinlab::McConfig cfg;
      cfg.sample_count = samples;
      cfg.seed = seed;
      rep = khinlab::mc_moment(coeffs, p.value, w, cfg);
    } else {
      rep = khinlab::exact_moment(coeffs, p.value, w, common.n_max);
    }
    reports.push_back(khinlab::moment_report_to_json(rep, p_text, coeffs));
  }

  if (common.format == "human") {
    std::string text;
    for (const auto& r : reports) {
      char line[256];
      std::snprintf(line, sizeof(line), "p=%-8s ||w xi||_p = %-18.12g E|w xi|^p = %-18.12g %s\n",
                    r["p"].get<std::string>().c_str(), r["norm"].get<double>(),
                    r["absolute_moment"].get<double>(), r["method"].get<std::string>().c_str());
      text += line;
    }
    emit(text, common.out_path);
  } else {
    emit(reports.dump(2), common.out_path);
  }
  return 0;
}

int run_constants(const std::string& q_text, bool limit_check, bool zero_mass,
                  const CommonOpts& common) {
  json j;
  j["schema_version"] = khinlab::kSchemaVersion;
  std::string text;
  char line[160];
  if (!q_text.empty()) {
    const khinlab::Decimal q = khinlab::parse_decimal(q_text);
    if (!(q.value >= 2.0))
      khinlab::fail(khinlab::ErrorKind::bad_argument, "B_q needs q >= 2");
    const double bq = khinlab::haagerup_Bq(q.value);
    j["q"] = q_text;
    j["B_q"] = bq;
    std::snprintf(line, sizeof(line), "B_q(%s) = %.12g\n", q_text.c_str(), bq);
    text += line;
  }
  if (limit_check || zero_mass) {
    const khinlab::ZeroMassThreshold z = khinlab::zero_mass_threshold();
    if (limit_check) {
      j["limit"] = z.limit;
      j["numeric_limit_check"] = z.numeric_limit_check;
      std::snprintf(line, sizeof(line),
                    "2 e^(gamma-2)                  = %.12g\n"
                    "B_q^(-2q/(q-2)) at q = 2+1e-4  = %.12g\n",
                    z.limit, z.numeric_limit_check);
      text += line;
    }
    if (zero_mass) {
      j["zero_mass_threshold"] = z.exact;
      std::snprintf(line, sizeof(line), "1 - 2 e^(gamma-2) = %.12g\n", z.exact);
      text += line;
    }
  }
  emit(common.format == "json" ? j.dump(2) : text, common.out_path);
  return 0;
}

int run_extract(const std::string& weight_path, const std::string& p_text,
                const std::string& q_text, const std::string& mode_name,
                const CommonOpts& common) {
  const khinlab::WeightSpec w = khinlab::load_weight(weight_path);
  const khinlab::Decimal p = khinlab::parse_decimal(p_text);
  const khinlab::Decimal q = khinlab::parse_decimal(q_text);
  const khinlab::ThresholdMode mode = khinlab::threshold_mode_from_string(mode_name);
  const khinlab::ConstantsReport rep = khinlab::extract_constants(w, p.value, q.value, mode);
  if (common.format == "human") {
    emit(khinlab::constants_report_to_human(rep), common.out_path);
  } else {
    json j = khinlab::constants_report_to_json(rep, p_text, q_text);
    j["weight"] = khinlab::weight_to_json(w);
    emit(j.dump(2), common.out_path);
  }
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t cases, std::uint64_t seed,
               const CommonOpts& common) {
  khinlab::CaseGenerator gen;
  gen.seed = seed;
  const khinlab::SuiteReport rep = khinlab::run_suite(gen, suite, cases);
  std::string text;
  if (common.format == "csv")
    text = khinlab::suite_report_to_csv(rep);
  else if (common.format == "human")
    text = khinlab::suite_report_to_human(rep);
  else
    text = khinlab::suite_report_to_json(rep).dump(2);
  emit(text, common.out_path);
  return rep.failures.empty() ? 0 : kExitFailure;
}

int run_counterexample(const CommonOpts& common) {
  const khinlab::CounterexampleReport rep = khinlab::counterexample_demo();
  if (common.format == "human")
    emit(khinlab::counterexample_to_human(rep), common.out_path);
  else
    emit(khinlab::counterexample_to_json(rep).dump(2), common.out_path);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Khintchine inequality toolbox: exact Rademacher-sum "
               "computations, constructive constants, and property suites"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--out", common.out_path, "write the report here instead of stdout")
      ->capture_default_str();
  auto* format_opt = app.add_option("--format", common.format, "json | csv | human")
                         ->check(CLI::IsMember({"json", "csv", "human"}))
                         ->capture_default_str();
  app.add_option("--nmax", common.n_max, "exact enumeration cap")
      ->envname("KHINLAB_NMAX")
      ->check(CLI::Range(1, 30))
      ->capture_default_str();

  // moments
  auto* moments = app.add_subcommand("moments", "moments/norms of w * xi from a coefficient file");
  std::string coeff_path, weight_path;
  std::vector<std::string> p_texts{"2"};
  bool use_exact = false, use_mc = false;
  std::uint64_t samples = 1'000'000, seed = 0;
  moments->add_option("--coeffs", coeff_path, "coefficient file (JSON array or lines)")
      ->required();
  moments->add_option("--p", p_texts, "moment exponents (decimal strings)")
      ->capture_default_str();
  moments->add_option("--weight", weight_path, "weight spec JSON file");
  auto* exact_flag = moments->add_flag("--exact", use_exact, "exact enumeration (default)");
  auto* mc_flag = moments->add_flag("--mc", use_mc, "seeded Monte Carlo estimation");
  mc_flag->excludes(exact_flag);
  moments->add_option("--samples", samples, "Monte Carlo sample count")
      ->needs(mc_flag)
      ->capture_default_str();
  moments->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();

  // constants
  auto* constants = app.add_subcommand("constants", "reference constants (12 significant digits)");
  std::string q_text;
  bool limit_check = false, zero_mass = false;
  constants->add_option("--q", q_text, "print the best constant B_q (q >= 2)");
  constants->add_flag("--limit-check", limit_check, "evaluate B_q^(-2q/(q-2)) near q = 2");
  constants->add_flag("--zero-mass", zero_mass, "print the zero-mass bound 1 - 2e^(gamma-2)");

  // extract
  auto* extract = app.add_subcommand("extract", "constructive constants for a weight");
  std::string ex_weight, ex_p, ex_q, ex_mode = "classic";
  extract->add_option("--weight", ex_weight, "weight spec JSON file")->required();
  extract->add_option("--p", ex_p, "moment exponent p > 0")->required();
  extract->add_option("--q", ex_q, "integrability exponent q > p")->required();
  extract->add_option("--mode", ex_mode, "classic | refined")
      ->check(CLI::IsMember({"classic", "refined"}))
      ->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "run a seeded property suite");
  std::string suite;
  std::uint64_t cases = 200, vseed = 0;
  verify->add_option("--suite", suite, "fourth-moment | l0 | zero-mass | paley-zygmund | sandwich | khintchine-upper")
      ->required();
  verify->add_option("--cases", cases, "number of seeded cases")->capture_default_str();
  verify->add_option("--seed", vseed, "suite seed")->capture_default_str();

  // counterexample
  auto* counter = app.add_subcommand("counterexample", "the s = 1/2 sharpness construction");

  // Let the shared --out/--format/--nmax options appear after the subcommand.
  for (auto* sub : {moments, constants, extract, verify, counter}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (moments->parsed())
      return run_moments(coeff_path, p_texts, weight_path, use_mc, samples, seed, common);
    if (constants->parsed()) {
      if (q_text.empty() && !limit_check && !zero_mass)
        khinlab::fail(khinlab::ErrorKind::bad_argument,
                      "constants needs --q, --limit-check, or --zero-mass");
      // Plain constants print at 12 significant digits unless JSON is asked for.
      if (format_opt->count() == 0) common.format = "human";
      return run_constants(q_text, limit_check, zero_mass, common);
    }
    if (extract->parsed()) return run_extract(ex_weight, ex_p, ex_q, ex_mode, common);
    if (verify->parsed()) return run_verify(suite, cases, vseed, common);
    if (counter->parsed()) return run_counterexample(common);
  } catch (const khinlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
