#ifndef KHINLAB_IO_HPP
#define KHINLAB_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "khinlab/montecarlo.hpp"
#include "khinlab/rademacher.hpp"
#include "khinlab/verifier.hpp"
#include "khinlab/weighted.hpp"

namespace khinlab {

inline constexpr int kSchemaVersion = 1;

// Coefficient files: a JSON array of decimal strings, or one decimal per
// line ('#' starts a comment). Numeric JSON entries are tolerated and
// re-serialized, which may lose the verbatim text.
CoefficientVector load_coefficients(const std::filesystem::path& path);

// Weight files follow the WeightSpec schema:
//   {"independent": {"atoms": [{"value": "<decimal>", "prob": "<decimal>"}, ...]}}
//   {"sign_function": {"k": <int>, "values": ["<decimal>", ...2^k...],
//                      "aux": {"atoms": [...]}}}   (aux optional)
WeightSpec load_weight(const std::filesystem::path& path);
WeightSpec weight_from_json(const nlohmann::json& j);

// Schema-shaped serialization with the ingested decimal texts, so a weight
// echoes verbatim: weight_from_json(weight_to_json(w)) reproduces w.
nlohmann::json weight_to_json(const WeightSpec& w);

// Reports. Each document carries "schema_version": 1 at its top level; the
// moments command emits a JSON array of such documents.
nlohmann::json moment_report_to_json(const MomentReport& report, const std::string& p_text,
                                     const CoefficientVector& coeffs);
nlohmann::json constants_report_to_json(const ConstantsReport& report, const std::string& p_text,
                                        const std::string& q_text);
nlohmann::json suite_report_to_json(const SuiteReport& report);
nlohmann::json counterexample_to_json(const CounterexampleReport& report);

std::string suite_report_to_csv(const SuiteReport& report);
std::string suite_report_to_human(const SuiteReport& report);
std::string constants_report_to_human(const ConstantsReport& report);
std::string counterexample_to_human(const CounterexampleReport& report);

} // namespace khinlab

#endif
