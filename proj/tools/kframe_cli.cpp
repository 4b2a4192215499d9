// kframe: command-line front end for scenario checks, single certifications,
// the worked example and the fuzz campaign.
//
// The JSON report goes to stdout (or --out); a short human summary goes to
// stderr. Exit status: 0 all assertions held, 1 an assertion failed or a check
// errored, 2 bad input.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kframe/checks.hpp"
#include "kframe/error.hpp"
#include "kframe/fuzz.hpp"
#include "kframe/scenario.hpp"

namespace {

using nlohmann::json;

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const std::size_t v = std::stoul(text);
    return {v, v};
  }
  return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
}

void emit(const json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw kframe::Error(kframe::ErrorCode::BadConfig, "cannot write " + out_path);
  out << text;
}

void summarize_checks(const kframe::RunResult& run, double ms) {
  for (const auto& o : run.outcomes) {
    std::fprintf(stderr, "%-4s %-24s %-22s hypothesis=%d certified=%d", o.ok() ? "ok" : "FAIL",
                 o.name.c_str(), o.type.c_str(), o.hypothesis_holds, o.certified);
    if (o.error) std::fprintf(stderr, "  error: %s", o.error_message.c_str());
    std::fprintf(stderr, "\n");
    for (const auto& a : o.assertions) {
      if (!a["pass"].get<bool>()) {
        std::fprintf(stderr, "       expected %s = %s, got %s\n", a["field"].get<std::string>().c_str(),
                     a["expected"].dump().c_str(), a["actual"].dump().c_str());
      }
    }
  }
  std::fprintf(stderr, "%zu checks, %s (%.1f ms)\n", run.outcomes.size(), run.ok ? "all passed" : "FAILURES", ms);
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral K-operator frame certification and theorem checks"};
  app.set_version_flag("--version", kframe::tool_version());
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  bool timing = false;
  std::optional<double> tol_psd, tol_residual, tol_rank;

  auto* check = app.add_subcommand("check", "Run every check listed in a scenario file");
  check->add_option("scenario", scenario_path, "Scenario file")->required();
  check->add_option("--tol-psd", tol_psd, "Loewner-order eigenvalue slack");
  check->add_option("--tol-residual", tol_residual, "Factorization residual tolerance");
  check->add_option("--tol-rank", tol_rank, "Relative singular-value cutoff");
  check->add_option("--out", out_path, "Write the report here instead of stdout");
  check->add_flag("--timing", timing, "Include per-check timings in the report");

  std::string family_name, k_name, t_name;
  auto* bounds = app.add_subcommand("bounds", "Optimal frame bounds of one family against one operator");
  bounds->add_option("scenario", scenario_path, "Scenario file")->required();
  bounds->add_option("--family", family_name, "Family name")->required();
  bounds->add_option("--k", k_name, "Operator name")->required();

  double lambda = 1.0;
  auto* example = app.add_subcommand("paper-example", "Reproduce the worked example (Simpson, diag(w, w/2))");
  example->add_option("--lambda", lambda, "Scale of K = diag(lambda/2, lambda/4)");
  example->add_option("--out", out_path, "Write the report here instead of stdout");

  auto* douglas = app.add_subcommand("douglas", "Range inclusion, majorization and factorization of K by T");
  douglas->add_option("scenario", scenario_path, "Scenario file")->required();
  douglas->add_option("--k", k_name, "Operator K")->required();
  douglas->add_option("--t", t_name, "Operator T")->required();

  kframe::FuzzConfig fuzz_cfg;
  std::string theorems, dims = "2..6", nodes = "1..9";
  auto* fuzz = app.add_subcommand("fuzz", "Seeded random campaign over the theorem checks");
  fuzz->add_option("--seed", fuzz_cfg.seed, "Campaign seed")->required();
  fuzz->add_option("--count", fuzz_cfg.count, "Instances per theorem")->required();
  fuzz->add_option("--theorems", theorems, "Comma-separated subset of theorems");
  fuzz->add_option("--dims", dims, "Dimension range a..b");
  fuzz->add_option("--nodes", nodes, "Node-count range a..b");
  fuzz->add_option("--degenerate-rate", fuzz_cfg.degenerate_rate, "Share of injected degenerate cases");
  fuzz->add_option("--out", out_path, "Write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*check) {
      const kframe::Scenario s = kframe::load_scenario(scenario_path);
      kframe::ReportOptions opts;
      opts.timing = timing;
      if (tol_psd || tol_residual || tol_rank) {
        kframe::ToleranceConfig cfg = s.config();
        if (tol_psd) cfg.psd_tol = *tol_psd;
        if (tol_residual) cfg.residual_tol = *tol_residual;
        if (tol_rank) cfg.rank_tol = *tol_rank;
        opts.tolerances = cfg;
      }
      const kframe::RunResult run = kframe::run_checks(s, opts);
      emit(run.report, out_path);
      summarize_checks(run, elapsed_ms(t0));
      return run.ok ? 0 : 1;
    }
    if (*bounds) {
      const kframe::Scenario s = kframe::load_scenario(scenario_path);
      const json r = kframe::bounds_report(s, family_name, k_name, s.config());
      emit(r, out_path);
      std::fprintf(stderr, "%s: A_opt = %s, B_opt = %s\n", r["status"].get<std::string>().c_str(),
                   r["A_opt"].dump().c_str(), r["B_opt"].dump().c_str());
      return 0;
    }
    if (*example) {
      const kframe::RunResult run = kframe::run_checks(kframe::worked_example_scenario(lambda));
      emit(run.report, out_path);
      summarize_checks(run, elapsed_ms(t0));
      return run.ok ? 0 : 1;
    }
    if (*douglas) {
      const kframe::Scenario s = kframe::load_scenario(scenario_path);
      const json r = kframe::douglas_json(s, k_name, t_name, s.config());
      emit(r, out_path);
      std::fprintf(stderr, "range_included=%d lambda=%s residual=%s consistent=%d\n",
                   r["range_included"].get<bool>(), r["lambda"].dump().c_str(), r["residual"].dump().c_str(),
                   r["consistent"].get<bool>());
      return r["consistent"].get<bool>() ? 0 : 1;
    }
    if (*fuzz) {
      if (!theorems.empty()) {
        std::stringstream ss(theorems);
        for (std::string item; std::getline(ss, item, ',');) {
          if (!item.empty()) fuzz_cfg.theorems.push_back(item);
        }
      }
      try {
        const Range d = parse_range(dims);
        const Range n = parse_range(nodes);
        fuzz_cfg.dim_lo = d.lo;
        fuzz_cfg.dim_hi = d.hi;
        fuzz_cfg.node_lo = n.lo;
        fuzz_cfg.node_hi = n.hi;
      } catch (const std::logic_error&) {
        throw kframe::Error(kframe::ErrorCode::BadConfig, "ranges are written a..b");
      }
      const kframe::CampaignResult c = kframe::fuzz_campaign(fuzz_cfg);
      emit(c.report, out_path);
      for (const auto& [name, t] : c.report["theorems"].items()) {
        std::fprintf(stderr, "%-20s gate %4zu/%-4zu certified %4zu failed %zu errors %zu\n", name.c_str(),
                     t["gate_passed"].get<std::size_t>(), t["instances"].get<std::size_t>(),
                     t["certified"].get<std::size_t>(), t["failed"].get<std::size_t>(),
                     t["errors"].get<std::size_t>());
      }
      std::fprintf(stderr, "%s (%.1f ms)\n", c.ok ? "no counterexamples" : "FAILURES", elapsed_ms(t0));
      return c.ok ? 0 : 1;
    }
  } catch (const kframe::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
