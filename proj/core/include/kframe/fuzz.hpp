#pragma once

// Seeded property campaign: random instances per theorem, each run through
// its hypothesis gate and, when the gate passes, through bound certification.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kframe/checks.hpp"
#include "kframe/scenario.hpp"

namespace kframe {

struct FuzzConfig {
  std::uint64_t seed = 0;
  std::size_t count = 1;             // instances per theorem
  std::vector<std::string> theorems; // empty = all
  std::size_t dim_lo = 2, dim_hi = 6;
  std::size_t node_lo = 1, node_hi = 9;
  double degenerate_rate = 0.05;

  void validate() const;  // BadConfig
};

/// bounds, majorization, douglas, compose_right, linear_combination, product,
/// subalgebra, homeomorphism, rank_update, relative, stability,
/// stability_beta, stability_min, sum_family, intertwined
const std::vector<std::string>& fuzz_theorems();

/// Flags whose truth the campaign asserts; every other flag is only tallied.
bool is_asserted_flag(const std::string& flag);

/// Deterministic in (cfg.seed, theorem, idx) and independent of the other
/// instances. The scenario holds exactly one check.
Scenario generate_instance(const std::string& theorem, const FuzzConfig& cfg, std::size_t idx);

enum class Verdict { GateRejected, Certified, Failed, Error };

struct InstanceResult {
  Verdict verdict = Verdict::Error;
  CheckOutcome outcome;
};

InstanceResult evaluate_instance(const Scenario& s);

struct CampaignResult {
  nlohmann::json report;
  bool ok = true;  // no failed certification, no asserted flag false, no error
};

CampaignResult fuzz_campaign(const FuzzConfig& cfg);

}  // namespace kframe
