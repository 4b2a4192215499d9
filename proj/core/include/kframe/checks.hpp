#pragma once

// Runs the checks listed in a scenario and assembles the JSON report.
//
// Check types and their params (names refer to scenario entries; any
// parameter marked "fit" may be given as the string "fit" to use the
// sharpest admissible value):
//
//   certify, bounds          family, k
//   frame_inequality         family, k, lower, upper
//   majorization             family, k
//   surjective               family, k
//   tight_dual               family, k
//   douglas                  k, t
//   compose_right            family, k, l
//   linear_combination       family, k, l, a, b
//   product                  family, k, l
//   subalgebra               family, k, poly
//   homeomorphism            family, k, q
//   perturb_rank_update      family, k, l, a_seq
//   relative_perturbation    family, perturbed, k, a_seq, b_seq, alpha*, beta*
//   stability_alpha_beta     family, perturbed, k, alpha*, beta*
//   stability_beta           family, perturbed, k, beta*
//   stability_min            family, perturbed, k, M*
//   sum_family               families, k, a, p, beta*
//   intertwined_sum          families, perturbed, k, l_map, p, lambda*
//
// "expect" maps result fields (or JSON pointers into the result) to expected
// values; numbers compare within expect.tol (default 1e-9, relative above 1).
// {"error": "<Code>"} expects the check to fail with that error.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kframe/error.hpp"
#include "kframe/scenario.hpp"

namespace kframe {

/// A family, a target and bounds claimed for the pair; kept so callers can
/// re-verify a claim independently.
struct BoundClaim {
  OperatorFamily family;
  LinOp target;
  double lower = 0.0;
  double upper = 0.0;
};

struct CheckOutcome {
  std::string name;
  std::string type;
  std::optional<ErrorCode> error;
  std::string error_message;
  bool hypothesis_holds = false;
  bool certified = false;
  std::optional<BoundClaim> claim;
  std::map<std::string, bool> variant_flags;
  nlohmann::json result = nlohmann::json::object();
  nlohmann::json assertions = nlohmann::json::array();
  bool assertions_ok = true;
  bool error_expected = false;

  /// Failed assertion or an error nobody asked for.
  bool ok() const noexcept { return assertions_ok && (!error || error_expected); }
};

/// Errors that mean "the theorem's preconditions are not met".
bool is_precondition_error(ErrorCode code) noexcept;

CheckOutcome run_check(const Scenario& s, const CheckSpec& check, const ToleranceConfig& cfg);

struct ReportOptions {
  std::optional<ToleranceConfig> tolerances;  // overrides the scenario's
  bool timing = false;
  std::optional<std::uint64_t> seed;
};

struct RunResult {
  nlohmann::json report;
  std::vector<CheckOutcome> outcomes;
  bool ok = true;
};

RunResult run_checks(const Scenario& s, const ReportOptions& options = {});

/// Single certification of (family, k) as the `bounds` command prints it.
nlohmann::json bounds_report(const Scenario& s, const std::string& family, const std::string& k,
                             const ToleranceConfig& cfg);
nlohmann::json douglas_json(const Scenario& s, const std::string& k, const std::string& t,
                            const ToleranceConfig& cfg);

std::string tool_version();

}  // namespace kframe
