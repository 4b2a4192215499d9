#include "kframe/fuzz.hpp"

#include <algorithm>
#include <cmath>

#include "kframe/certify.hpp"
#include "kframe/error.hpp"
#include "kframe/random.hpp"
#include "kframe/robustness.hpp"

namespace kframe {

using nlohmann::json;

namespace {

// Shared pieces of a random instance: measure, field, and an optional common
// subspace that makes every family rank-deficient.
struct Base {
  Rng rng;
  Scenario s;
  MeasureSpace space;
  Index d = 0;
  bool complex = false;
  bool deficient = false;
  bool degenerate = false;
  LinOp P;  // orthogonal projector onto the family's co-range (I if !deficient)
};

QuadratureSpec random_measure(Rng& rng, std::size_t n) {
  QuadratureSpec q;
  const std::size_t pick = rng.uniform_int(0, 2);
  if (pick == 2 && n >= 3 && n % 2 == 1) {
    q.kind = QuadratureKind::Simpson;
    q.lo = 0.0;
    q.hi = rng.uniform(0.5, 2.0);
    q.n = n;
  } else if (pick == 1 || pick == 2) {
    q.kind = QuadratureKind::Midpoint;
    q.lo = rng.uniform(-1.0, 0.0);
    q.hi = rng.uniform(0.5, 1.5);
    q.n = n;
  } else {
    q.kind = QuadratureKind::Explicit;
    bool any_mass = false;
    for (std::size_t i = 0; i < n; ++i) {
      q.explicit_nodes.push_back(rng.uniform(-1.0, 1.0));
      const double w = rng.bernoulli(0.05) ? 0.0 : rng.uniform(0.05, 1.0) / static_cast<double>(n);
      any_mass = any_mass || w > 0.0;
      q.explicit_weights.push_back(w);
    }
    if (!any_mass) q.explicit_weights.front() = 1.0;
    q.n = n;
  }
  return q;
}

std::size_t theorem_stream(const std::string& theorem) {
  const auto& all = fuzz_theorems();
  return static_cast<std::size_t>(std::find(all.begin(), all.end(), theorem) - all.begin()) + 1;
}

Base make_base(const std::string& theorem, const FuzzConfig& cfg, std::size_t idx, bool allow_deficient = true) {
  Base b{Rng(cfg.seed, theorem_stream(theorem), idx), {}, MeasureSpace({0.0}, {1.0}), 0, false, false, false, {}};
  b.d = static_cast<Index>(b.rng.uniform_int(cfg.dim_lo, cfg.dim_hi));
  const std::size_t n = b.rng.uniform_int(cfg.node_lo, cfg.node_hi);
  b.complex = b.rng.bernoulli(0.5);
  b.s.dim = b.d;
  b.s.complex_field = b.complex;
  b.s.measure = random_measure(b.rng, n);
  b.space = b.s.space();
  b.deficient = allow_deficient && b.d >= 2 && b.rng.bernoulli(0.25);
  b.degenerate = b.rng.bernoulli(cfg.degenerate_rate);
  b.P = LinOp::Identity(b.d, b.d);
  if (b.deficient) {
    const Index r = static_cast<Index>(b.rng.uniform_int(1, static_cast<std::size_t>(b.d - 1)));
    const LinOp U = b.rng.gaussian(b.d, b.d, b.complex).householderQr().householderQ();
    b.P = U.leftCols(r) * U.leftCols(r).adjoint();
  }
  return b;
}

LinOp gauss(Base& b) { return b.rng.gaussian(b.d, b.d, b.complex); }

Scalar random_scalar(Base& b, double lo, double hi) {
  const double mag = b.rng.uniform(lo, hi);
  if (!b.complex) return b.rng.bernoulli(0.5) ? mag : -mag;
  const double phase = b.rng.uniform(0.0, 2.0 * M_PI);
  return std::polar(mag, phase);
}

/// Adds a family named `name` (random per node or polynomial in omega) and
/// returns its sampled form.
OperatorFamily add_family(Base& b, const std::string& name) {
  FamilySpec f;
  if (b.rng.bernoulli(0.25)) {
    f.is_polynomial = true;
    const std::size_t degree = b.rng.uniform_int(0, 2);
    for (std::size_t j = 0; j <= degree; ++j) f.polynomial.push_back(gauss(b) * b.P);
  } else {
    for (std::size_t i = 0; i < b.space.size(); ++i) f.ops.push_back(gauss(b) * b.P);
  }
  b.s.families[name] = f;
  return b.s.family(name);
}

void add_explicit_family(Base& b, const std::string& name, std::vector<LinOp> ops) {
  FamilySpec f;
  f.ops = std::move(ops);
  b.s.families[name] = std::move(f);
}

/// K inside the family's range (so the family is a K-frame) most of the time.
LinOp random_target(Base& b) {
  if (b.degenerate) return LinOp::Zero(b.d, b.d);
  const LinOp G = gauss(b);
  if (b.deficient && b.rng.bernoulli(0.6)) return b.P * G;
  return G;
}

/// K with the family a K-frame: transform theorems take that as given, so
/// their degenerate cases live in L, Q, b or the polynomial instead.
LinOp frame_target(Base& b) { return b.P * gauss(b); }

LinOp unit_gauss(Base& b) {
  const LinOp G = gauss(b);
  return G / op_norm(G);
}

json scalar_json(const Base& b, Scalar z) { return encode_scalar(z, b.complex); }

json scalars_json(const Base& b, const std::vector<Scalar>& zs) {
  json out = json::array();
  for (Scalar z : zs) out.push_back(scalar_json(b, z));
  return out;
}

void add_check(Base& b, const std::string& theorem, const std::string& type, json params) {
  b.s.checks.push_back(CheckSpec{theorem, type, std::move(params), json::object()});
}

double sampled_mass(const MeasureSpace& space) { return std::max(space.total_mass(), 1e-300); }

// Perturbed family Gamma_i = Lambda_i + E_i stored per node.
OperatorFamily add_perturbed(Base& b, const std::string& name, const OperatorFamily& F,
                             const std::vector<LinOp>& E) {
  std::vector<LinOp> ops;
  for (std::size_t i = 0; i < F.size(); ++i) ops.push_back(F[i] + E[i]);
  add_explicit_family(b, name, ops);
  return b.s.family(name);
}

void gen_bounds(Base& b, const std::string& th) {
  add_family(b, "F");
  b.s.operators["K"] = random_target(b);
  add_check(b, th, th == "bounds" ? "certify" : "majorization", {{"family", "F"}, {"k", "K"}});
}

void gen_douglas(Base& b, const std::string& th) {
  const Index r = static_cast<Index>(b.rng.uniform_int(1, static_cast<std::size_t>(b.d)));
  const LinOp T = random_rank(b.rng, b.d, r, b.complex);
  LinOp K;
  if (b.degenerate) {
    K = LinOp::Zero(b.d, b.d);
  } else if (b.rng.bernoulli(0.7)) {
    const Index qr = static_cast<Index>(b.rng.uniform_int(1, static_cast<std::size_t>(b.d)));
    K = T * random_rank(b.rng, b.d, qr, b.complex);
  } else {
    K = gauss(b);
  }
  b.s.operators["K"] = K;
  b.s.operators["T"] = T;
  add_check(b, th, "douglas", {{"k", "K"}, {"t", "T"}});
}

void gen_transform(Base& b, const std::string& th) {
  add_family(b, "F");
  const LinOp K = frame_target(b);
  b.s.operators["K"] = K;
  json params = {{"family", "F"}, {"k", "K"}};
  if (th == "compose_right" || th == "product") {
    LinOp L = b.rng.bernoulli(0.3)
                  ? random_rank(b.rng, b.d, static_cast<Index>(b.rng.uniform_int(1, static_cast<std::size_t>(b.d))), b.complex)
                  : gauss(b);
    if (b.degenerate) L.setZero();
    b.s.operators["L"] = L;
    params["l"] = "L";
    add_check(b, th, th, params);
  } else if (th == "linear_combination") {
    // the family must also be an L-frame: keep L in the same range as K
    LinOp L = b.deficient ? LinOp(b.P * gauss(b)) : gauss(b);
    b.s.operators["L"] = L;
    params["l"] = "L";
    params["a"] = scalar_json(b, random_scalar(b, 0.2, 2.0));
    params["b"] = scalar_json(b, b.degenerate ? Scalar(0.0) : random_scalar(b, 0.2, 2.0));
    add_check(b, th, th, params);
  } else if (th == "subalgebra") {
    std::vector<Scalar> poly;
    const std::size_t m = b.rng.uniform_int(1, 3);
    for (std::size_t j = 0; j < m; ++j) poly.push_back(b.degenerate ? Scalar(0.0) : random_scalar(b, 0.1, 1.5));
    params["poly"] = scalars_json(b, poly);
    add_check(b, th, th, params);
  } else {  // homeomorphism
    LinOp Q;
    if (b.degenerate) {
      Q = random_rank(b.rng, b.d, b.d - 1, b.complex);
    } else {
      // c0 I + c1 X + c2 X^2 with X = K*/||K||: commutes with K* and
      // ||c1 X + c2 X^2|| < 1 < |c0| keeps it well conditioned.
      const double k_norm = op_norm(K);
      const LinOp X = k_norm > 0.0 ? LinOp(K.adjoint() / k_norm) : LinOp::Zero(b.d, b.d);
      const Scalar c0 = random_scalar(b, 1.5, 3.0);
      const Scalar c1 = random_scalar(b, 0.0, 0.5);
      const Scalar c2 = random_scalar(b, 0.0, 0.5);
      Q = c0 * LinOp::Identity(b.d, b.d) + c1 * X + c2 * X * X;
    }
    b.s.operators["Q"] = Q;
    params["q"] = "Q";
    add_check(b, th, th, params);
  }
}

void gen_rank_update(Base& b, const std::string& th) {
  const OperatorFamily F = add_family(b, "F");
  const LinOp K = random_target(b);
  LinOp L = gauss(b);
  if (b.degenerate) L.setZero();
  b.s.operators["K"] = K;
  b.s.operators["L"] = L;
  std::vector<Scalar> a;
  double mass = 0.0;
  for (std::size_t i = 0; i < b.space.size(); ++i) {
    a.push_back(b.complex ? Scalar(b.rng.normal(), b.rng.normal()) : Scalar(b.rng.normal()));
    mass += b.space.weight(i) * std::norm(a.back());
  }
  const double A = certify_k_frame(F, K).usable_lower();
  const double l_norm = op_norm(L);
  if (A > 0.0 && mass > 0.0 && l_norm > 0.0) {
    // R = u A with u spread across the gate threshold
    const double scale = std::sqrt(b.rng.uniform(0.0, 1.3) * A / (mass * l_norm * l_norm));
    for (auto& z : a) z *= scale;
  }
  add_check(b, th, "perturb_rank_update",
            {{"family", "F"}, {"k", "K"}, {"l", "L"}, {"a_seq", scalars_json(b, a)}});
}

void gen_relative(Base& b, const std::string& th) {
  const OperatorFamily F = add_family(b, "F");
  b.s.operators["K"] = random_target(b);
  const double eps = b.rng.uniform(0.0, 0.8);
  std::vector<Scalar> a;
  std::vector<Scalar> c;
  std::vector<LinOp> ops;
  for (std::size_t i = 0; i < F.size(); ++i) {
    a.emplace_back(b.rng.uniform(0.5, 2.0));
    c.emplace_back(b.rng.uniform(0.5, 2.0));
    const double scale = std::max(op_norm(F[i]), 1e-3);
    ops.push_back((a.back() / c.back()) * (F[i] + eps * scale * unit_gauss(b)));
  }
  if (b.degenerate) c.front() = 0.0;
  add_explicit_family(b, "G", ops);
  add_check(b, th, "relative_perturbation",
            {{"family", "F"}, {"perturbed", "G"}, {"k", "K"}, {"a_seq", scalars_json(b, a)},
             {"b_seq", scalars_json(b, c)}, {"alpha", "fit"}, {"beta", "fit"}});
}

void gen_stability(Base& b, const std::string& th) {
  const OperatorFamily F = add_family(b, "F");
  const LinOp K = random_target(b);
  b.s.operators["K"] = K;
  const double k_norm = op_norm(K);
  const double A = k_norm > 0.0 ? certify_k_frame(F, K).usable_lower() : 0.0;
  const double base = std::sqrt((A > 0.0 ? A : 1.0) / sampled_mass(b.space));
  const LinOp Kn = k_norm > 0.0 ? LinOp(K.adjoint() / k_norm) : LinOp::Zero(b.d, b.d);

  std::vector<LinOp> E;
  if (th == "stability_beta") {
    const double eps = b.rng.uniform(0.0, 1.1);
    for (std::size_t i = 0; i < F.size(); ++i) E.push_back(eps * base * unit_gauss(b) * Kn);
  } else if (th == "stability") {
    const double e1 = b.rng.uniform(0.0, 0.6);
    const double e2 = b.rng.uniform(0.0, 0.6);
    for (std::size_t i = 0; i < F.size(); ++i) {
      E.push_back(e1 * base * unit_gauss(b) * Kn + e2 * unit_gauss(b) * F[i]);
    }
  } else {  // stability_min
    const double eps = b.rng.uniform(0.0, 2.0);
    const bool in_range = b.rng.bernoulli(0.5);
    for (std::size_t i = 0; i < F.size(); ++i) {
      E.push_back(in_range ? LinOp(eps * unit_gauss(b) * F[i])
                           : LinOp(eps * std::max(op_norm(F[i]), 1e-3) * unit_gauss(b)));
    }
  }
  const OperatorFamily G = add_perturbed(b, "G", F, E);
  json params = {{"family", "F"}, {"perturbed", "G"}, {"k", "K"}};

  if (th == "stability_beta") {
    params["beta"] = "fit";
    add_check(b, th, "stability_beta", params);
  } else if (th == "stability_min") {
    params["M"] = "fit";
    add_check(b, th, "stability_min", params);
  } else {
    // S_diff <= a_f S_Lambda and S_diff <= b_f KK* give every convex split
    // (s a_f, (1-s) b_f).
    const LinOp S_diff = diff_frame_operator(F, G);
    const auto a_f = pencil_sup(S_diff, frame_operator(F).S).ratio;
    const auto b_f = pencil_sup(S_diff, K * K.adjoint()).ratio;
    const double s = b.rng.uniform(0.0, 1.0);
    if (a_f && b_f) {
      params["alpha"] = s * *a_f;
      params["beta"] = (1.0 - s) * *b_f;
    } else if (a_f) {
      params["alpha"] = *a_f;
      params["beta"] = 0.0;
    } else if (b_f) {
      params["alpha"] = 0.0;
      params["beta"] = *b_f;
    } else {
      params["alpha"] = "fit";
      params["beta"] = "fit";
    }
    add_check(b, th, "stability_alpha_beta", params);
  }
}

void gen_sum_family(Base& b, const std::string& th) {
  const std::size_t m = b.rng.uniform_int(2, 3);
  json names = json::array();
  std::vector<Scalar> a;
  for (std::size_t k = 0; k < m; ++k) {
    const std::string name = k == 0 ? "F" : "F" + std::to_string(k + 1);
    add_family(b, name);
    names.push_back(name);
    a.push_back(random_scalar(b, 0.2, 2.0));
  }
  b.s.operators["K"] = random_target(b);
  add_check(b, th, "sum_family",
            {{"families", names},
             {"k", "K"},
             {"a", scalars_json(b, a)},
             {"p", b.rng.uniform_int(1, m)},
             {"beta", "fit"}});
}

void gen_intertwined(Base& b, const std::string& th) {
  const std::size_t m = b.rng.uniform_int(2, 3);
  const std::size_t p = b.rng.uniform_int(1, m);
  json names = json::array();
  json perturbed = json::array();
  std::vector<OperatorFamily> Fs;
  std::vector<OperatorFamily> Gs;
  const double eps = b.rng.uniform(0.0, 0.8);
  for (std::size_t k = 0; k < m; ++k) {
    const std::string name = k == 0 ? "F" : "F" + std::to_string(k + 1);
    Fs.push_back(add_family(b, name));
    std::vector<LinOp> E;
    for (std::size_t i = 0; i < Fs.back().size(); ++i) E.push_back(eps * unit_gauss(b) * Fs.back()[i]);
    Gs.push_back(add_perturbed(b, "G" + std::to_string(k + 1), Fs.back(), E));
    names.push_back(name);
    perturbed.push_back("G" + std::to_string(k + 1));
  }
  b.s.operators["K"] = random_target(b);

  // Block-diagonal map with L_i (sum_k Gamma_ik) = Lambda_pi at every node.
  const Index n = static_cast<Index>(b.space.size());
  LinOp l_map = LinOp::Zero(n * b.d, n * b.d);
  for (Index i = 0; i < n; ++i) {
    LinOp sum = LinOp::Zero(b.d, b.d);
    for (const auto& G : Gs) sum += G[static_cast<std::size_t>(i)];
    l_map.block(i * b.d, i * b.d, b.d, b.d) = Fs[p - 1][static_cast<std::size_t>(i)] * pinv(sum);
  }
  if (b.degenerate) l_map += b.rng.gaussian(n * b.d, n * b.d, b.complex);
  b.s.l2_operators["L"] = l_map;
  add_check(b, th, "intertwined_sum",
            {{"families", names},
             {"perturbed", perturbed},
             {"k", "K"},
             {"l_map", "L"},
             {"p", p},
             {"lambda", "fit"}});
}

const std::vector<std::string> kAssertedFlags = {"condition_R_lt_A", "sandwich_lower", "sandwich_upper",
                                                 "upper_safe", "upper_with_B"};

}  // namespace

void FuzzConfig::validate() const {
  if (count < 1) throw Error(ErrorCode::BadConfig, "count must be at least 1");
  if (dim_lo < 1 || dim_lo > dim_hi) throw Error(ErrorCode::BadConfig, "bad dimension range");
  if (node_lo < 1 || node_lo > node_hi) throw Error(ErrorCode::BadConfig, "bad node-count range");
  if (!(degenerate_rate >= 0.0 && degenerate_rate <= 1.0)) {
    throw Error(ErrorCode::BadConfig, "degenerate rate must lie in [0, 1]");
  }
  for (const auto& t : theorems) {
    const auto& all = fuzz_theorems();
    if (std::find(all.begin(), all.end(), t) == all.end()) {
      throw Error(ErrorCode::BadConfig, "unknown theorem \"" + t + "\"");
    }
  }
}

const std::vector<std::string>& fuzz_theorems() {
  static const std::vector<std::string> names = {
      "bounds",  "majorization",  "douglas",   "compose_right", "linear_combination",
      "product", "subalgebra",    "homeomorphism", "rank_update",   "relative",
      "stability", "stability_beta", "stability_min", "sum_family",  "intertwined"};
  return names;
}

bool is_asserted_flag(const std::string& flag) {
  return std::find(kAssertedFlags.begin(), kAssertedFlags.end(), flag) != kAssertedFlags.end();
}

Scenario generate_instance(const std::string& theorem, const FuzzConfig& cfg, std::size_t idx) {
  const auto& all = fuzz_theorems();
  if (std::find(all.begin(), all.end(), theorem) == all.end()) {
    throw Error(ErrorCode::BadConfig, "unknown theorem \"" + theorem + "\"");
  }
  Base b = make_base(theorem, cfg, idx, theorem != "intertwined");

  if (theorem == "bounds" || theorem == "majorization") gen_bounds(b, theorem);
  else if (theorem == "douglas") gen_douglas(b, theorem);
  else if (theorem == "rank_update") gen_rank_update(b, theorem);
  else if (theorem == "relative") gen_relative(b, theorem);
  else if (theorem.rfind("stability", 0) == 0) gen_stability(b, theorem);
  else if (theorem == "sum_family") gen_sum_family(b, theorem);
  else if (theorem == "intertwined") gen_intertwined(b, theorem);
  else gen_transform(b, theorem);
  return std::move(b.s);
}

InstanceResult evaluate_instance(const Scenario& s) {
  InstanceResult r;
  r.outcome = run_check(s, s.checks.front(), s.config());
  const CheckOutcome& o = r.outcome;
  if (o.error) {
    r.verdict = is_precondition_error(*o.error) ? Verdict::GateRejected : Verdict::Error;
  } else if (!o.hypothesis_holds) {
    r.verdict = Verdict::GateRejected;
  } else {
    bool asserted_ok = true;
    for (const auto& [flag, value] : o.variant_flags) {
      if (is_asserted_flag(flag) && !value) asserted_ok = false;
    }
    r.verdict = o.certified && asserted_ok ? Verdict::Certified : Verdict::Failed;
  }
  return r;
}

CampaignResult fuzz_campaign(const FuzzConfig& cfg) {
  cfg.validate();
  const std::vector<std::string> theorems = cfg.theorems.empty() ? fuzz_theorems() : cfg.theorems;
  CampaignResult out;
  json per = json::object();
  std::size_t total = 0, gated = 0, certified = 0, failed = 0, errors = 0;

  for (const auto& th : theorems) {
    std::size_t t_gated = 0, t_rejected = 0, t_cert = 0, t_failed = 0, t_err = 0;
    json counterexamples = json::array();
    json error_instances = json::array();
    std::map<std::string, std::pair<std::size_t, std::size_t>> flags;  // true count, total

    for (std::size_t idx = 0; idx < cfg.count; ++idx) {
      const Scenario s = generate_instance(th, cfg, idx);
      const InstanceResult r = evaluate_instance(s);
      switch (r.verdict) {
        case Verdict::GateRejected: ++t_rejected; break;
        case Verdict::Certified: ++t_gated; ++t_cert; break;
        case Verdict::Failed:
          ++t_gated;
          ++t_failed;
          counterexamples.push_back({{"index", idx}, {"scenario", scenario_to_json(s)}, {"result", r.outcome.result}});
          break;
        case Verdict::Error:
          ++t_err;
          error_instances.push_back({{"index", idx}, {"message", r.outcome.error_message}, {"scenario", scenario_to_json(s)}});
          break;
      }
      if (r.verdict == Verdict::Certified || r.verdict == Verdict::Failed) {
        for (const auto& [flag, value] : r.outcome.variant_flags) {
          auto& f = flags[flag];
          f.first += value ? 1 : 0;
          f.second += 1;
        }
      }
    }

    json fj = json::object();
    for (const auto& [flag, tally] : flags) {
      fj[flag] = {{"true", tally.first},
                  {"total", tally.second},
                  {"rate", static_cast<double>(tally.first) / static_cast<double>(tally.second)},
                  {"asserted", is_asserted_flag(flag)}};
    }
    per[th] = {{"instances", cfg.count},
               {"gate_passed", t_gated},
               {"gate_rejected", t_rejected},
               {"certified", t_cert},
               {"failed", t_failed},
               {"errors", t_err},
               {"variant_flags", fj},
               {"counterexamples", counterexamples},
               {"error_instances", error_instances}};
    total += cfg.count;
    gated += t_gated;
    certified += t_cert;
    failed += t_failed;
    errors += t_err;
  }

  out.ok = failed == 0 && errors == 0;
  out.report = {{"tool", "kframe"},
                {"version", tool_version()},
                {"seed", cfg.seed},
                {"config",
                 {{"count", cfg.count},
                  {"dims", {cfg.dim_lo, cfg.dim_hi}},
                  {"nodes", {cfg.node_lo, cfg.node_hi}},
                  {"theorems", theorems},
                  {"degenerate_rate", cfg.degenerate_rate}}},
                {"theorems", per},
                {"summary",
                 {{"instances", total},
                  {"gate_passed", gated},
                  {"certified", certified},
                  {"failed", failed},
                  {"errors", errors},
                  {"ok", out.ok}}}};
  return out;
}

}  // namespace kframe
