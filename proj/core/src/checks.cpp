#include "kframe/checks.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "kframe/certify.hpp"
#include "kframe/douglas.hpp"
#include "kframe/robustness.hpp"
#include "kframe/transforms.hpp"

#ifndef KFRAME_VERSION_STRING
#define KFRAME_VERSION_STRING "0.0.0"
#endif

namespace kframe {

using nlohmann::json;

namespace {

// ---- parameter access -------------------------------------------------------

class Params {
 public:
  Params(const Scenario& s, const json& p) : s_(s), p_(p) {}

  const json& raw(const std::string& key) const {
    auto it = p_.find(key);
    if (it == p_.end()) throw Error(ErrorCode::BadSpec, "missing parameter \"" + key + "\"");
    return *it;
  }
  bool has(const std::string& key) const { return p_.contains(key); }
  bool is_fit(const std::string& key) const { return has(key) && p_[key] == "fit"; }

  std::string name(const std::string& key) const {
    const json& j = raw(key);
    if (!j.is_string()) throw Error(ErrorCode::BadSpec, "parameter \"" + key + "\" must be a name");
    return j.get<std::string>();
  }
  std::vector<std::string> names(const std::string& key) const {
    const json& j = raw(key);
    if (j.is_string()) return {j.get<std::string>()};
    std::vector<std::string> out;
    for (const auto& e : j) out.push_back(e.get<std::string>());
    return out;
  }
  double real(const std::string& key) const {
    const Scalar z = decode_scalar(raw(key), "params/" + key);
    if (z.imag() != 0.0) throw Error(ErrorCode::BadSpec, "parameter \"" + key + "\" must be real");
    return z.real();
  }
  Scalar scalar(const std::string& key) const { return decode_scalar(raw(key), "params/" + key); }
  std::vector<Scalar> scalars(const std::string& key) const {
    const json& j = raw(key);
    if (!j.is_array()) throw Error(ErrorCode::BadSpec, "parameter \"" + key + "\" must be an array");
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_scalar(j[i], "params/" + key));
    return out;
  }
  std::size_t index(const std::string& key) const {
    const json& j = raw(key);
    if (!j.is_number_integer()) throw Error(ErrorCode::BadSpec, "parameter \"" + key + "\" must be an integer");
    const long long v = j.get<long long>();
    if (v < 1) throw Error(ErrorCode::IndexOutOfRange, key + " = " + std::to_string(v));
    return static_cast<std::size_t>(v);
  }
  ScalarSequence sequence(const std::string& key) const { return ScalarSequence(s_.space(), scalars(key)); }

  OperatorFamily family(const std::string& key) const { return s_.family(name(key)); }
  std::vector<OperatorFamily> family_list(const std::string& key) const {
    std::vector<OperatorFamily> out;
    for (const auto& n : names(key)) out.push_back(s_.family(n));
    return out;
  }
  const LinOp& op(const std::string& key) const { return s_.op(name(key)); }

 private:
  const Scenario& s_;
  const json& p_;
};

// ---- encoding -----------------------------------------------------------------

json witness(const std::optional<Vector>& v) { return v ? encode_vector(*v) : json(nullptr); }

json cert_json(const FrameCertificate& c) {
  return {{"status", std::string(to_string(c.status))},
          {"A_opt", encode_real(c.A_opt)},
          {"B_opt", encode_real(c.B_opt)},
          {"tight", c.tight},
          {"parseval", c.parseval},
          {"verified", c.verified},
          {"lower_witness", encode_vector(c.lower_witness)},
          {"upper_witness", encode_vector(c.upper_witness)}};
}

json check_json(const BoundCheck& b) {
  return {{"lower_ok", b.lower_ok},
          {"upper_ok", b.upper_ok},
          {"lower_witness", witness(b.lower_witness)},
          {"upper_witness", witness(b.upper_witness)}};
}

json fit_value(const std::optional<double>& v) { return v ? encode_real(*v) : json("none"); }

// ---- check bodies -------------------------------------------------------------

void fill_transform(CheckOutcome& out, const TransformReport& t, bool hypothesis) {
  out.hypothesis_holds = hypothesis;
  out.certified = t.certified;
  out.claim = BoundClaim{t.new_family, t.new_target, t.guaranteed_lower, t.guaranteed_upper};
  out.result = {{"hypothesis_holds", hypothesis},
                {"guaranteed_lower", encode_real(t.guaranteed_lower)},
                {"guaranteed_upper", encode_real(t.guaranteed_upper)},
                {"certified", t.certified},
                {"bounds", check_json(t.check)},
                {"optimal", cert_json(t.optimal_cert)}};
  if (t.sharper_upper) out.result["sharper_upper"] = encode_real(*t.sharper_upper);
}

void fill_robustness(CheckOutcome& out, const RobustnessReport& r, const ToleranceConfig& cfg) {
  out.hypothesis_holds = r.hypothesis_holds;
  out.certified = r.certified;
  out.variant_flags = r.variant_flags;
  out.claim = BoundClaim{r.family, r.target, r.guaranteed_lower, r.guaranteed_upper};
  json values = json::object();
  for (const auto& [k, v] : r.values) values[k] = encode_real(v);
  out.result = {{"hypothesis_holds", r.hypothesis_holds},
                {"hypothesis_witness", witness(r.hypothesis_witness)},
                {"guaranteed_lower", encode_real(r.guaranteed_lower)},
                {"guaranteed_upper", encode_real(r.guaranteed_upper)},
                {"certified", r.certified},
                {"bounds", check_json(r.check)},
                {"variant_flags", r.variant_flags},
                {"values", values},
                {"optimal", cert_json(certify_k_frame(r.family, r.target, cfg))}};
}

using Body = std::function<void(const Scenario&, const Params&, const ToleranceConfig&, CheckOutcome&)>;

void do_certify(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const OperatorFamily F = p.family("family");
  const LinOp& K = p.op("k");
  const FrameCertificate c = certify_k_frame(F, K, cfg);
  out.hypothesis_holds = true;
  out.certified = c.verified;
  const double lower = c.status == FrameStatus::KFrame ? c.A_opt : 0.0;
  out.claim = BoundClaim{F, K, lower, c.B_opt};
  out.result = cert_json(c);
}

void do_frame_inequality(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const OperatorFamily F = p.family("family");
  const LinOp& K = p.op("k");
  const double lower = p.real("lower");
  const double upper = p.real("upper");
  const BoundCheck b = verify_k_frame_bounds(frame_operator(F, cfg).S, K, lower, upper, cfg);
  out.hypothesis_holds = true;
  out.certified = b.ok();
  out.result = check_json(b);
  out.result["holds"] = b.ok();
}

void do_majorization(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const MajorizationReport m = majorization_equivalence(p.family("family"), p.op("k"), cfg);
  out.hypothesis_holds = true;
  out.certified = m.agree();
  out.result = {{"vacuous", m.vacuous},   {"has_A", m.has_A},
                {"A", encode_real(m.A)},  {"majorized", m.majorized},
                {"factorizable", m.factorizable}, {"residual", encode_real(m.residual)},
                {"agree", m.agree()}};
}

void do_surjective(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const OperatorFamily F = p.family("family");
  const LinOp& K = p.op("k");
  const FrameCertificate c = certify_k_frame(F, K, cfg);
  const OrdinaryFrameReport r = surjective_reduction(F, K, c, cfg);
  out.hypothesis_holds = r.is_ordinary_frame;
  out.certified = !r.is_ordinary_frame || r.certified;
  if (r.is_ordinary_frame) {
    out.claim = BoundClaim{F, LinOp::Identity(F.dim(), F.dim()), r.lower, r.upper};
  }
  out.result = {{"is_ordinary_frame", r.is_ordinary_frame}, {"alpha", encode_real(r.alpha)},
                {"lower", encode_real(r.lower)},            {"upper", encode_real(r.upper)},
                {"certified", r.certified}};
}

void do_tight_dual(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const TightDualReport r = tight_dual_check(p.family("family"), p.op("k"), cfg);
  out.hypothesis_holds = true;
  out.certified = r.biconditional_holds;
  out.result = {{"is_tight_K", r.is_tight_K},       {"A", encode_real(r.A)},
                {"is_tight_ordinary", r.is_tight_ordinary}, {"B", encode_real(r.B)},
                {"duality_holds", r.duality_holds}, {"biconditional_holds", r.biconditional_holds}};
}

json douglas_result(const DouglasReport& d, bool complex_field) {
  return {{"range_included", d.range_included},
          {"lambda", fit_value(d.lambda_min_factor)},
          {"Q", encode_matrix(d.Q, complex_field)},
          {"residual", encode_real(d.residual)},
          {"factor_ok", d.factor_ok},
          {"consistent", d.consistent()}};
}

void do_douglas(const Scenario& s, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const DouglasReport d = douglas_report(p.op("k"), p.op("t"), cfg);
  out.hypothesis_holds = true;
  out.certified = d.consistent();
  out.result = douglas_result(d, s.complex_field);
}

void do_compose_right(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const OperatorFamily F = p.family("family");
  const LinOp& K = p.op("k");
  const FrameCertificate c = certify_k_frame(F, K, cfg);
  fill_transform(out, compose_right(F, K, p.op("l"), c, cfg), c.status == FrameStatus::KFrame);
}

void do_linear_combination(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const OperatorFamily F = p.family("family");
  const LinOp& K = p.op("k");
  const LinOp& L = p.op("l");
  const FrameCertificate ck = certify_k_frame(F, K, cfg);
  const FrameCertificate cl = certify_k_frame(F, L, cfg);
  const TransformReport t = linear_combination_target(F, K, L, p.scalar("a"), p.scalar("b"), ck, cl, cfg);
  fill_transform(out, t, ck.status == FrameStatus::KFrame && cl.status == FrameStatus::KFrame);
}

void do_product(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const OperatorFamily F = p.family("family");
  const LinOp& K = p.op("k");
  const FrameCertificate c = certify_k_frame(F, K, cfg);
  fill_transform(out, product_target(F, K, p.op("l"), c, cfg), c.status == FrameStatus::KFrame);
}

void do_subalgebra(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const OperatorFamily F = p.family("family");
  const LinOp& K = p.op("k");
  const FrameCertificate c = certify_k_frame(F, K, cfg);
  const SubalgebraReport r = subalgebra_target(F, K, c, p.scalars("poly"), cfg);
  fill_transform(out, r.transform, c.status == FrameStatus::KFrame);
  out.certified = out.certified && r.status_ok;
  out.result["status_ok"] = r.status_ok;
}

void do_homeomorphism(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const OperatorFamily F = p.family("family");
  const LinOp& K = p.op("k");
  const FrameCertificate c = certify_k_frame(F, K, cfg);
  const HomeomorphismReport r = homeomorphism_compose(F, K, p.op("q"), c, cfg);
  fill_transform(out, r.transform, c.status == FrameStatus::KFrame);
  out.certified = out.certified && (!out.hypothesis_holds || r.sandwich_ok);
  out.result["sandwich"] = {{"lower_C", r.lower_C}, {"upper_C", r.upper_C}, {"lower_D", r.lower_D},
                            {"upper_D", r.upper_D}, {"ok", r.sandwich_ok}};
}

void do_rank_update(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const OperatorFamily F = p.family("family");
  const LinOp& K = p.op("k");
  const FrameCertificate c = certify_k_frame(F, K, cfg);
  fill_robustness(out, perturb_rank_update(F, K, p.op("l"), p.sequence("a_seq"), c, cfg), cfg);
}

void do_relative(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const OperatorFamily F = p.family("family");
  const OperatorFamily G = p.family("perturbed");
  const LinOp& K = p.op("k");
  const ScalarSequence a = p.sequence("a_seq");
  const ScalarSequence b = p.sequence("b_seq");
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> fitted;
  const bool fit = p.is_fit("alpha") || p.is_fit("beta");
  if (fit) {
    fitted = fit_relative_alpha_beta(F, G, a, b, cfg);
    if (!fitted) {
      out.result = {{"hypothesis_holds", false}, {"fit", "none"}, {"certified", false}};
      return;
    }
  }
  alpha = p.is_fit("alpha") ? *fitted : p.real("alpha");
  beta = p.is_fit("beta") ? *fitted : p.real("beta");
  const FrameCertificate c = certify_k_frame(F, K, cfg);
  fill_robustness(out, relative_perturbation(F, G, a, b, alpha, beta, K, c, cfg), cfg);
  if (fit) out.result["fit"] = encode_real(*fitted);
}

void do_stability(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const OperatorFamily F = p.family("family");
  const OperatorFamily G = p.family("perturbed");
  const LinOp& K = p.op("k");
  double alpha = 0.0;
  double beta = 0.0;
  if (p.is_fit("alpha") || p.is_fit("beta")) {
    const auto fitted = fit_stability(F, G, K, cfg);
    if (!fitted) {
      out.result = {{"hypothesis_holds", false}, {"fit", "none"}, {"certified", false}};
      return;
    }
    alpha = fitted->first;
    beta = fitted->second;
    out.result["fit"] = {encode_real(alpha), encode_real(beta)};
  } else {
    alpha = p.real("alpha");
    beta = p.real("beta");
  }
  const json fit = out.result.value("fit", json(nullptr));
  const FrameCertificate c = certify_k_frame(F, K, cfg);
  fill_robustness(out, stability_alpha_beta(F, G, K, alpha, beta, c, cfg), cfg);
  if (!fit.is_null()) out.result["fit"] = fit;
}

void do_stability_beta(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const OperatorFamily F = p.family("family");
  const OperatorFamily G = p.family("perturbed");
  const LinOp& K = p.op("k");
  std::optional<double> beta;
  if (p.is_fit("beta")) {
    beta = fit_stability_beta(F, G, K, cfg);
    if (!beta) {
      out.result = {{"hypothesis_holds", false}, {"fit", "none"}, {"certified", false}};
      return;
    }
  } else {
    beta = p.real("beta");
  }
  const FrameCertificate c = certify_k_frame(F, K, cfg);
  fill_robustness(out, stability_beta_only(F, G, K, *beta, c, cfg), cfg);
  if (p.is_fit("beta")) out.result["fit"] = encode_real(*beta);
}

void do_stability_min(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const OperatorFamily F = p.family("family");
  const OperatorFamily G = p.family("perturbed");
  const LinOp& K = p.op("k");
  std::optional<double> M;
  if (p.is_fit("M")) {
    M = fit_min_condition(F, G, cfg);
    if (!M) {
      out.result = {{"hypothesis_holds", false}, {"fit", "none"}, {"certified", false}};
      return;
    }
    // M = 0 means the families coincide; any positive M then works.
    if (*M <= 0.0) M = cfg.psd_tol;
  } else {
    M = p.real("M");
  }
  const FrameCertificate c = certify_k_frame(F, K, cfg);
  fill_robustness(out, stability_min_condition(F, G, K, *M, c, cfg), cfg);
  if (p.is_fit("M")) out.result["fit"] = encode_real(*M);
}

void do_sum_family(const Scenario&, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const std::vector<OperatorFamily> Fs = p.family_list("families");
  const LinOp& K = p.op("k");
  const std::vector<Scalar> a = p.scalars("a");
  const std::size_t idx = p.index("p");
  const double beta = p.is_fit("beta") ? fit_sum_beta(Fs, a, idx, cfg) : p.real("beta");
  std::vector<FrameCertificate> certs;
  for (const auto& F : Fs) certs.push_back(certify_k_frame(F, K, cfg));
  fill_robustness(out, sum_family(Fs, certs, a, idx, beta, K, cfg), cfg);
  if (p.is_fit("beta")) out.result["fit"] = encode_real(beta);
}

void do_intertwined(const Scenario& s, const Params& p, const ToleranceConfig& cfg, CheckOutcome& out) {
  const std::vector<OperatorFamily> Fs = p.family_list("families");
  const std::vector<OperatorFamily> Gs = p.family_list("perturbed");
  const LinOp& K = p.op("k");
  const LinOp& L = s.l2_op(p.name("l_map"));
  std::optional<double> lambda;
  if (p.is_fit("lambda")) {
    lambda = fit_intertwined_lambda(Fs, Gs, cfg);
    if (!lambda) {
      out.result = {{"hypothesis_holds", false}, {"fit", "none"}, {"certified", false}};
      return;
    }
  } else {
    lambda = p.real("lambda");
  }
  std::vector<FrameCertificate> certs;
  for (const auto& F : Fs) certs.push_back(certify_k_frame(F, K, cfg));
  fill_robustness(out, intertwined_sum(Fs, Gs, L, p.index("p"), *lambda, K, certs, cfg), cfg);
  if (p.is_fit("lambda")) out.result["fit"] = encode_real(*lambda);
}

const std::map<std::string, Body>& bodies() {
  static const std::map<std::string, Body> table = {
      {"certify", do_certify},
      {"bounds", do_certify},
      {"frame_inequality", do_frame_inequality},
      {"majorization", do_majorization},
      {"surjective", do_surjective},
      {"tight_dual", do_tight_dual},
      {"douglas", do_douglas},
      {"compose_right", do_compose_right},
      {"linear_combination", do_linear_combination},
      {"product", do_product},
      {"subalgebra", do_subalgebra},
      {"homeomorphism", do_homeomorphism},
      {"perturb_rank_update", do_rank_update},
      {"relative_perturbation", do_relative},
      {"stability_alpha_beta", do_stability},
      {"stability_beta", do_stability_beta},
      {"stability_min", do_stability_min},
      {"sum_family", do_sum_family},
      {"intertwined_sum", do_intertwined},
  };
  return table;
}

// ---- assertions ---------------------------------------------------------------

bool matches(const json& actual, const json& expected, double tol) {
  if (expected.is_number() && actual.is_number()) {
    const double a = actual.get<double>();
    const double e = expected.get<double>();
    return std::abs(a - e) <= tol * std::max(1.0, std::abs(e));
  }
  if (expected.is_array() && actual.is_array()) {
    if (expected.size() != actual.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (!matches(actual[i], expected[i], tol)) return false;
    }
    return true;
  }
  return actual == expected;
}

void evaluate_expectations(const CheckSpec& check, CheckOutcome& out) {
  const json& expect = check.expect;
  const double tol = expect.contains("tol") ? expect["tol"].get<double>() : 1e-9;
  if (auto it = expect.find("error"); it != expect.end()) {
    const std::string got = out.error ? std::string(to_string(*out.error)) : "none";
    const bool pass = *it == got;
    out.error_expected = pass;
    out.assertions.push_back({{"field", "error"}, {"expected", *it}, {"actual", got}, {"pass", pass}});
    out.assertions_ok = out.assertions_ok && pass;
  }
  for (const auto& [key, expected] : expect.items()) {
    if (key == "tol" || key == "error") continue;
    json actual = nullptr;
    if (!out.error) {
      if (!key.empty() && key[0] == '/') {
        const json::json_pointer ptr(key);
        if (out.result.contains(ptr)) actual = out.result.at(ptr);
      } else if (out.result.contains(key)) {
        actual = out.result[key];
      }
    }
    const bool pass = !actual.is_null() && matches(actual, expected, tol);
    out.assertions.push_back({{"field", key}, {"expected", expected}, {"actual", actual}, {"pass", pass}});
    out.assertions_ok = out.assertions_ok && pass;
  }
}

}  // namespace

std::string tool_version() { return KFRAME_VERSION_STRING; }

bool is_precondition_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroK:
    case ErrorCode::ZeroScalar:
    case ErrorCode::ZeroOperator:
    case ErrorCode::ZeroPolynomial:
    case ErrorCode::NotInvertible:
    case ErrorCode::CommutationFailed:
    case ErrorCode::DivideByZero:
    case ErrorCode::NotConfined:
    case ErrorCode::NonRealSequence:
    case ErrorCode::BadAlphaBeta:
    case ErrorCode::BadBeta:
    case ErrorCode::BadM:
    case ErrorCode::BadLambda:
    case ErrorCode::NotKFrame:
    case ErrorCode::IntertwiningFailed:
      return true;
    default:
      return false;
  }
}

CheckOutcome run_check(const Scenario& s, const CheckSpec& check, const ToleranceConfig& cfg) {
  CheckOutcome out;
  out.name = check.name;
  out.type = check.type;
  try {
    auto it = bodies().find(check.type);
    if (it == bodies().end()) throw Error(ErrorCode::BadSpec, "unknown check type \"" + check.type + "\"");
    it->second(s, Params(s, check.params), cfg, out);
  } catch (const Error& e) {
    out.error = e.code();
    out.error_message = e.what();
    out.claim.reset();
    out.hypothesis_holds = false;
    out.certified = false;
    out.result = {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
  }
  evaluate_expectations(check, out);
  return out;
}

RunResult run_checks(const Scenario& s, const ReportOptions& options) {
  const ToleranceConfig cfg = options.tolerances.value_or(s.config());
  cfg.validate();
  RunResult run;
  json checks = json::array();
  std::size_t errors = 0;
  std::size_t failed_assertions = 0;
  std::size_t total_assertions = 0;
  for (const auto& spec : s.checks) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckOutcome o = run_check(s, spec, cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json cj = {{"name", o.name},
               {"type", o.type},
               {"ok", o.ok()},
               {"hypothesis_holds", o.hypothesis_holds},
               {"certified", o.certified},
               {"result", o.result},
               {"assertions", o.assertions}};
    if (options.timing) cj["timing_ms"] = ms;
    checks.push_back(std::move(cj));
    if (o.error && !o.error_expected) ++errors;
    total_assertions += o.assertions.size();
    for (const auto& a : o.assertions) failed_assertions += a["pass"].get<bool>() ? 0 : 1;
    run.ok = run.ok && o.ok();
    run.outcomes.push_back(std::move(o));
  }
  run.report = {{"tool", "kframe"},
                {"version", tool_version()},
                {"seed", options.seed ? json(*options.seed) : json(nullptr)},
                {"tolerances", {{"psd", cfg.psd_tol}, {"residual", cfg.residual_tol}, {"rank", cfg.rank_tol}}},
                {"checks", std::move(checks)},
                {"summary",
                 {{"checks", s.checks.size()},
                  {"errors", errors},
                  {"assertions", total_assertions},
                  {"assertions_failed", failed_assertions},
                  {"ok", run.ok}}}};
  return run;
}

json bounds_report(const Scenario& s, const std::string& family, const std::string& k,
                   const ToleranceConfig& cfg) {
  const FrameCertificate c = certify_k_frame(s.family(family), s.op(k), cfg);
  json out = cert_json(c);
  out["family"] = family;
  out["k"] = k;
  return out;
}

json douglas_json(const Scenario& s, const std::string& k, const std::string& t, const ToleranceConfig& cfg) {
  json out = douglas_result(douglas_report(s.op(k), s.op(t), cfg), s.complex_field);
  out["k"] = k;
  out["t"] = t;
  return out;
}

}  // namespace kframe
