#pragma once

// Scenario files: a JSON document naming a measure, operator families,
// operators and a list of checks to run against them.
//
//   {
//     "dim": 2, "field": "real",
//     "measure": {"kind": "simpson", "interval": [0, 1], "n": 3},
//     "families": {"F": {"ops": [M0, M1, M2]}, "P": {"polynomial": [C0, C1]}},
//     "operators": {"K": M},
//     "l2_operators": {"L": big M},
//     "tolerances": {"psd": 1e-9, "residual": 1e-8, "rank": 1e-12},
//     "checks": [{"name": "c", "type": "certify", "params": {...}, "expect": {...}}]
//   }
//
// Matrices are row-major nested arrays; a complex entry is [re, im].

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "kframe/family.hpp"
#include "kframe/measure.hpp"

namespace kframe {

struct FamilySpec {
  std::vector<LinOp> ops;         // one per node, or
  std::vector<LinOp> polynomial;  // coefficients C_0, C_1, ... in omega
  bool is_polynomial = false;

  bool operator==(const FamilySpec&) const = default;
};

struct CheckSpec {
  std::string name;
  std::string type;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json expect = nlohmann::json::object();

  bool operator==(const CheckSpec&) const = default;
};

struct Scenario {
  Index dim = 0;
  bool complex_field = false;
  QuadratureSpec measure;
  std::map<std::string, FamilySpec> families;
  std::map<std::string, LinOp> operators;
  std::map<std::string, LinOp> l2_operators;
  std::optional<ToleranceConfig> tolerances;
  std::vector<CheckSpec> checks;

  bool operator==(const Scenario& other) const;

  MeasureSpace space() const;
  OperatorFamily family(const std::string& name) const;
  const LinOp& op(const std::string& name) const;
  const LinOp& l2_op(const std::string& name) const;
  ToleranceConfig config() const { return tolerances.value_or(ToleranceConfig{}); }
};

/// Throws ParseError (with line:column for syntax errors, a JSON pointer for
/// structural ones), UnresolvedName or DimensionMismatch.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

nlohmann::json scenario_to_json(const Scenario& s);
std::string serialize_scenario(const Scenario& s);

/// Simpson rule with three nodes on [0, 1], Lambda_w = diag(w, w/2) and
/// K = diag(lambda/2, lambda/4). The rule is exact for w^2, so the sampled
/// frame operator is diag(1/3, 1/12) = (4/3) KK* at lambda = 1.
/// Checks: optimal bounds (B = 1/3, A = 4/(3 lambda^2)) and the chain
/// KK* <= S <= (1/3) I.
Scenario worked_example_scenario(double lambda = 1.0);

// Shared JSON encoding helpers, also used by reports.
nlohmann::json encode_scalar(Scalar z, bool complex_field);
nlohmann::json encode_matrix(const LinOp& M, bool complex_field);
nlohmann::json encode_vector(const Vector& v);
/// +-inf and NaN become the strings "inf", "-inf", "nan".
nlohmann::json encode_real(double x);
Scalar decode_scalar(const nlohmann::json& j, const std::string& where);

}  // namespace kframe
