#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parobs/config.hpp"
#include "parobs/control.hpp"
#include "parobs/errors.hpp"
#include "parobs/fft.hpp"
#include "parobs/observability.hpp"
#include "parobs/pfld.hpp"
#include "parobs/probes.hpp"
#include "parobs/projector.hpp"
#include "parobs/reports.hpp"
#include "parobs/rng.hpp"
#include "parobs/semigroup.hpp"

namespace fs = std::filesystem;
using namespace parobs;

namespace {

struct RunContext {
  Config cfg;
  fs::path out;
  SplitRng rng;
  unsigned threads = 1;
};

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) {
    out.push_back(b);
    return out;
  }
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

Field gaussian_bump(const Grid& grid, double width) {
  Field f = Field::zeros(grid, Space::Physical);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto multi = grid.unflatten(flat);
    double r2 = 0.0;
    for (int axis = 0; axis < grid.dim(); ++axis) {
      const double x = grid.coordinate(axis, multi[axis]);
      r2 += x * x;
    }
    f.values[flat] = std::exp(-r2 / (2.0 * width * width));
  }
  return f;
}

// <prefix>.initial = gaussian | random | band with the matching parameters.
Field initial_field(const Config& cfg, const std::string& prefix, const Grid& grid,
                    SplitRng rng) {
  const std::string kind = cfg.get_string(prefix + ".initial", "gaussian");
  if (kind == "gaussian") return gaussian_bump(grid, cfg.get_double(prefix + ".width", 1.0));
  if (kind == "random")
    return random_field(grid, rng, cfg.get_double(prefix + ".decay_scale", 0.0));
  if (kind == "band")
    return random_band_limited(grid, rng, cfg.get_double(prefix + ".lambda"));
  throw ConfigError(prefix + ".initial must be gaussian, random, or band, got '" + kind + "'");
}

std::vector<double> lambda_ladder(const Config& cfg) {
  const std::vector<double> ladder = cfg.get_double_list("run.lambda");
  for (double value : ladder)
    if (!(value > 0.0)) throw ConfigError("run.lambda entries must be positive");
  return ladder;
}

std::vector<double> fit_times(const Config& cfg) {
  const double lo = cfg.get_double("run.fit_t_min", 0.05);
  const double hi = cfg.get_double("run.fit_t_max", 1.0);
  const std::size_t count = cfg.get_size("run.fit_t_count", 16);
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw ConfigError("run.fit_t_* must give an increasing positive window");
  return linspace(lo, hi, count);
}

std::string indexed_name(const std::string& stem, std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", index);
  return stem + "_" + buf + ".pfld";
}

// Writes the run records, and a machine-readable failure file when any check
// failed; a clean run removes the stale failure file so reruns are
// idempotent.
int finish(const std::string& name, const fs::path& out, const std::string& jsonl_name,
           const std::vector<Record>& records, const std::vector<Record>& failures) {
  write_jsonl((out / jsonl_name).string(), records);
  const fs::path fail_path = out / ("failures_" + name + ".jsonl");
  if (failures.empty()) {
    fs::remove(fail_path);
    std::cout << name << ": pass\n";
    return 0;
  }
  write_jsonl(fail_path.string(), failures);
  std::cout << name << ": FAIL (" << failures.size() << " failing checks, see "
            << fail_path.string() << ")\n";
  return 1;
}

Record failure_record(const std::string& subcommand, const std::string& why) {
  Record rec;
  rec.add("kind", "failure");
  rec.add("subcommand", subcommand);
  rec.add("error", why);
  return rec;
}

// Growth envelope and dissipation prefactor shared by the constant-chain
// subcommands.
GrowthBound measure_growth(const RunContext& ctx, const SemigroupOperator& flow,
                           double horizon) {
  const std::size_t samples = ctx.cfg.get_size("run.growth_samples", 16);
  std::vector<Field> probes;
  SplitRng rng = ctx.rng.split("growth-probes");
  for (std::size_t i = 0; i < 4; ++i) probes.push_back(random_field(flow.grid(), rng.split(i)));
  return estimate_growth_bound(flow, linspace(horizon / 16.0, horizon, samples), probes);
}

double measure_prefactor(const RunContext& ctx, const EllipticSymbol& symbol, const Grid& grid,
                         double lambda_fit) {
  const std::vector<double> times = fit_times(ctx.cfg);
  const std::size_t count = ctx.cfg.get_size("run.fit_probes", 6);
  const std::vector<Field> probes =
      dissipation_probe_set(grid, lambda_fit, ctx.rng.split("fit-probes"), count);
  return measure_dissipation_general(symbol, grid, lambda_fit, times, probes).prefactor_fit;
}

// Probe-chunked wrapper so --threads speeds up the expensive ratio sweeps.
// Chunk merging is max/sum, so the result is independent of scheduling.
ObservabilityRatioReport measure_ratio_parallel(const SemigroupOperator& flow,
                                                const ThickSet& set, double horizon, double p,
                                                double r, const std::vector<Field>& probes,
                                                std::size_t time_nodes, unsigned threads) {
  if (threads <= 1 || probes.size() < 2 * threads)
    return measure_observability_ratio(flow, set, horizon, p, r, probes, time_nodes);
  const std::size_t chunks = std::min<std::size_t>(threads, probes.size());
  std::vector<std::future<std::optional<ObservabilityRatioReport>>> futures;
  std::vector<std::size_t> chunk_sizes;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = probes.size() * c / chunks;
    const std::size_t end = probes.size() * (c + 1) / chunks;
    chunk_sizes.push_back(end - begin);
    futures.push_back(std::async(std::launch::async, [&, begin, end] {
      const std::vector<Field> slice(probes.begin() + begin, probes.begin() + end);
      try {
        return std::optional(
            measure_observability_ratio(flow, set, horizon, p, r, slice, time_nodes));
      } catch (const ZeroDenominator&) {
        return std::optional<ObservabilityRatioReport>();
      }
    }));
  }
  ObservabilityRatioReport merged;
  bool admitted = false;
  for (std::size_t c = 0; c < chunks; ++c) {
    const auto part = futures[c].get();
    if (!part) {
      merged.excluded_probes += chunk_sizes[c];
      continue;
    }
    admitted = true;
    merged.c_emp = std::max(merged.c_emp, part->c_emp);
    merged.worst_refinement = std::max(merged.worst_refinement, part->worst_refinement);
    merged.excluded_probes += part->excluded_probes;
  }
  if (!admitted)
    throw ZeroDenominator("measure_observability_ratio: every probe vanishes on the set");
  return merged;
}

int run_certify(const RunContext& ctx) {
  const Grid grid = grid_from_config(ctx.cfg);
  const EllipticSymbol symbol = symbol_from_config(ctx.cfg, grid.dim());
  Record rec;
  rec.add("kind", "certify");
  rec.add("dim", static_cast<long long>(symbol.dim()));
  rec.add("order", static_cast<long long>(symbol.order()));
  rec.add("c", symbol.ellipticity_c());
  rec.add("omega", symbol.shift_omega());
  rec.add("lambda_star", symbol.lambda_star());
  rec.add("pass", true);
  std::cout << "certified: c = " << format_double(symbol.ellipticity_c())
            << ", omega = " << format_double(symbol.shift_omega())
            << ", lambda_star = " << format_double(symbol.lambda_star()) << "\n";
  return finish("certify", ctx.out, "certify.jsonl", {rec}, {});
}

int run_evolve(const RunContext& ctx) {
  const Grid grid = grid_from_config(ctx.cfg);
  const EllipticSymbol symbol = symbol_from_config(ctx.cfg, grid.dim());
  const SemigroupOperator flow(symbol, grid);
  const std::vector<double> times = ctx.cfg.get_double_list("run.times");
  const Field start = initial_field(ctx.cfg, "evolve", grid, ctx.rng.split("initial"));
  write_pfld(ctx.out / "evolve_initial.pfld", start);

  std::vector<Record> records;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Field state = flow.apply(times[i], start);
    const std::string file = indexed_name("evolve", i);
    write_pfld(ctx.out / file, state);
    Record rec;
    rec.add("kind", "evolve");
    rec.add("t", times[i]);
    rec.add("l2_norm", lp_norm(state, 2.0));
    rec.add("sup_norm", lp_norm(state, std::numeric_limits<double>::infinity()));
    rec.add("file", file);
    records.push_back(rec);
  }
  return finish("evolve", ctx.out, "evolve.jsonl", records, {});
}

int run_verify_kernel(const RunContext& ctx) {
  const Grid grid = grid_from_config(ctx.cfg);
  const EllipticSymbol symbol = symbol_from_config(ctx.cfg, grid.dim());
  const SemigroupOperator flow(symbol, grid);
  std::vector<double> times = {0.05, 0.1, 0.2, 0.5, 1.0};
  if (ctx.cfg.has("run.times")) times = ctx.cfg.get_double_list("run.times");
  const KernelBoundFit fit = verify_kernel_bound(flow, times);

  std::vector<Record> records;
  Record rec;
  rec.add("kind", "kernel_fit");
  rec.add("c1", fit.c1);
  rec.add("c2", fit.c2);
  rec.add("omega", fit.omega);
  rec.add("pass", fit.pass);
  records.push_back(rec);
  for (std::size_t i = 0; i < fit.t_samples.size(); ++i) {
    Record sample;
    sample.add("kind", "kernel_sample");
    sample.add("t", fit.t_samples[i]);
    sample.add("sup_ratio", fit.sup_ratio[i]);
    records.push_back(sample);
  }
  std::vector<Record> failures;
  if (!fit.pass)
    failures.push_back(failure_record("verify-kernel", "no admissible envelope fit"));
  return finish("verify-kernel", ctx.out, "kernel.jsonl", records, failures);
}

int run_verify_dissipation(const RunContext& ctx) {
  const Grid grid = grid_from_config(ctx.cfg);
  const EllipticSymbol symbol = symbol_from_config(ctx.cfg, grid.dim());
  const std::string kind = ctx.cfg.get_string("symbol.kind", "laplacian");
  const double p = ctx.cfg.get_double("run.p", 2.0);
  const std::vector<double> times = fit_times(ctx.cfg);
  const std::size_t probe_count = ctx.cfg.get_size("run.probes", 6);

  std::vector<Record> records;
  std::vector<Record> failures;
  const std::vector<double> ladder = lambda_ladder(ctx.cfg);
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double lambda = ladder[i];
    const std::vector<Field> probes =
        dissipation_probe_set(grid, lambda, ctx.rng.split("dissipation").split(i), probe_count);
    const DissipationReport report =
        kind == "laplacian"
            ? measure_dissipation_laplacian(grid, symbol.order(), lambda, times, probes, p)
            : measure_dissipation_general(symbol, grid, lambda, times, probes, p);
    Record rec;
    rec.add("kind", "dissipation");
    rec.add("lambda", lambda);
    rec.add("rate", report.rate_theoretical);
    rec.add("slope", report.slope_fit);
    rec.add("prefactor", report.prefactor_fit);
    rec.add("pass", report.pass);
    records.push_back(rec);
    for (std::size_t j = 0; j < report.t_samples.size(); ++j) {
      Record sample;
      sample.add("kind", "dissipation_sample");
      sample.add("lambda", lambda);
      sample.add("t", report.t_samples[j]);
      sample.add("ratio", report.ratio[j]);
      sample.add("log_ratio", std::log(report.ratio[j]));
      records.push_back(sample);
    }
    if (!report.pass)
      failures.push_back(failure_record(
          "verify-dissipation", "slope " + format_double(report.slope_fit) +
                                    " above target at lambda " + format_double(lambda)));
  }
  return finish("verify-dissipation", ctx.out, "dissipation.jsonl", records, failures);
}

int run_verify_uncertainty(const RunContext& ctx) {
  const Grid grid = grid_from_config(ctx.cfg);
  const ThickSet set = generate_thick_set(grid, thickset_from_config(ctx.cfg), ctx.rng.split("set"));
  const double p = ctx.cfg.get_double("run.p", 2.0);
  const double sharpness = ctx.cfg.get_double("run.kovrijkine_k", 10.0);
  const std::size_t probe_count = ctx.cfg.get_size("run.probes", 64);

  std::vector<Record> records;
  std::vector<Record> failures;
  const std::vector<double> ladder = lambda_ladder(ctx.cfg);
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double lambda = ladder[i];
    const std::vector<Field> probes = spectral_inequality_probe_set(
        set, lambda, ctx.rng.split("uncertainty").split(i), probe_count);
    const SpectralInequalityReport report =
        measure_ls_constant(set, lambda, p, probes, sharpness);
    Record rec;
    rec.add("kind", "uncertainty");
    rec.add("lambda", lambda);
    rec.add("rho", set.rho());
    rec.add("L1", set.box_l1());
    rec.add("d0", report.d0);
    rec.add("d1", report.d1);
    rec.add("C_emp", report.c_emp);
    rec.add("log_C_emp", std::log(report.c_emp));
    rec.add("log_prediction", report.log_prediction);
    rec.add("excluded_probes", report.excluded_probes);
    rec.add("pass", report.pass);
    records.push_back(rec);
    if (!report.pass)
      failures.push_back(failure_record(
          "verify-uncertainty",
          "empirical constant exceeds prediction at lambda " + format_double(lambda)));
  }
  return finish("verify-uncertainty", ctx.out, "uncertainty.jsonl", records, failures);
}

int run_estimate_cobs(const RunContext& ctx) {
  const Grid grid = grid_from_config(ctx.cfg);
  const EllipticSymbol symbol = symbol_from_config(ctx.cfg, grid.dim());
  const SemigroupOperator flow(symbol, grid);
  const ThickSet set = generate_thick_set(grid, thickset_from_config(ctx.cfg), ctx.rng.split("set"));

  std::vector<double> horizons;
  if (ctx.cfg.has("run.horizons"))
    horizons = ctx.cfg.get_double_list("run.horizons");
  else
    horizons.push_back(ctx.cfg.get_double("run.horizon", 1.0));
  const double p = ctx.cfg.get_double("run.p", 2.0);
  const double r = ctx.cfg.get_double("run.r", 2.0);
  const double sharpness = ctx.cfg.get_double("run.kovrijkine_k", 10.0);
  const std::size_t probe_count = ctx.cfg.get_size("run.probes", 64);
  const std::size_t time_nodes = ctx.cfg.get_size("run.time_nodes", 64);
  const double lambda_fit = ctx.cfg.get_double("run.lambda_fit", 8.0);
  const double t_max = *std::max_element(horizons.begin(), horizons.end());

  const GrowthBound growth = measure_growth(ctx, flow, t_max);
  const double prefactor = measure_prefactor(ctx, symbol, grid, lambda_fit);
  const std::vector<Field> probes =
      random_probe_set(grid, ctx.rng.split("ratio-probes"), probe_count,
                       ctx.cfg.get_double("run.probe_decay", 0.0));

  std::vector<Record> records;
  std::vector<Record> failures;
  CsvTable csv;
  csv.columns = {"T", "rho", "L1", "lambda_star", "C1", "C2", "C3", "C_obs", "C_emp", "pass"};
  for (double horizon : horizons) {
    const ObservabilityConstants constants =
        compute_parabolic_cobs(symbol, set, growth, horizon, r, prefactor, sharpness);
    const ObservabilityRatioReport ratio = measure_ratio_parallel(
        flow, set, horizon, p, r, probes, time_nodes, ctx.threads);
    const double log_c_emp = std::log(ratio.c_emp);
    const bool pass = log_c_emp <= constants.log_cobs;
    const double m = constants.inputs.gamma2;
    Record rec;
    rec.add("kind", "cobs");
    rec.add("rho", set.rho());
    rec.add("L1", set.box_l1());
    append_constants(rec, constants);
    rec.add("C_emp", ratio.c_emp);
    rec.add("log_C_emp", log_c_emp);
    rec.add("inv_T_pow", std::pow(horizon, -1.0 / (m - 1.0)));
    rec.add("excluded_probes", ratio.excluded_probes);
    rec.add("quadrature_refinement", ratio.worst_refinement);
    rec.add("pass", pass);
    records.push_back(rec);
    csv.rows.push_back({format_double(horizon), format_double(set.rho()),
                        format_double(set.box_l1()),
                        format_double(constants.inputs.lambda_star),
                        format_double(constants.c1), format_double(constants.c2),
                        format_double(constants.c3), format_double(constants.cobs),
                        format_double(ratio.c_emp), pass ? "true" : "false"});
    if (!pass)
      failures.push_back(failure_record(
          "estimate-cobs",
          "empirical constant exceeds the bound at T = " + format_double(horizon)));
  }
  std::sort(csv.rows.begin(), csv.rows.end(),
            [](const auto& a, const auto& b) { return std::stod(a[0]) < std::stod(b[0]); });
  write_csv((ctx.out / "cobs_sweep.csv").string(), csv);
  return finish("estimate-cobs", ctx.out, "cobs.jsonl", records, failures);
}

int run_verify_iteration(const RunContext& ctx) {
  const Grid grid = grid_from_config(ctx.cfg);
  const EllipticSymbol symbol = symbol_from_config(ctx.cfg, grid.dim());
  const SemigroupOperator flow(symbol, grid);
  const ThickSet set = generate_thick_set(grid, thickset_from_config(ctx.cfg), ctx.rng.split("set"));

  const double lambda = lambda_ladder(ctx.cfg).front();
  const double horizon = ctx.cfg.get_double("run.horizon", 1.0);
  const std::size_t t_count = ctx.cfg.get_size("run.t_count", 32);
  const std::size_t panels = ctx.cfg.get_size("run.panels", 4);
  const std::size_t probe_count = ctx.cfg.get_size("run.probes", 16);
  const double sharpness = ctx.cfg.get_double("run.kovrijkine_k", 10.0);
  const double lambda_fit = ctx.cfg.get_double("run.lambda_fit", lambda);

  const GrowthBound growth = measure_growth(ctx, flow, horizon);
  const double prefactor = measure_prefactor(ctx, symbol, grid, lambda_fit);
  const ObservabilityInputs inputs =
      compute_parabolic_cobs(symbol, set, growth, horizon, 2.0, prefactor, sharpness).inputs;

  std::vector<double> t_grid;
  for (std::size_t j = 1; j <= t_count; ++j)
    t_grid.push_back(horizon * static_cast<double>(j) / static_cast<double>(t_count));
  const std::vector<Field> probes =
      random_probe_set(grid, ctx.rng.split("iteration-probes"), probe_count,
                       ctx.cfg.get_double("run.probe_decay", 0.0));

  const IterationReport report =
      verify_iteration_inequality(flow, set, inputs, lambda, t_grid, probes, panels);

  std::vector<Record> records;
  Record rec;
  rec.add("kind", "iteration");
  rec.add("lambda", lambda);
  rec.add("T", horizon);
  rec.add("worst_slack", report.worst_slack);
  rec.add("worst_t", report.worst_t);
  rec.add("pass", report.pass);
  records.push_back(rec);
  for (const auto& sample : report.samples) {
    Record row;
    row.add("kind", "iteration_sample");
    row.add("lambda", lambda);
    row.add("t", sample.t);
    row.add("log_lhs", sample.log_lhs);
    row.add("log_rhs", sample.log_rhs);
    row.add("slack", sample.slack);
    records.push_back(row);
  }
  std::vector<Record> failures;
  if (!report.pass)
    failures.push_back(failure_record(
        "verify-iteration", "negative slack " + format_double(report.worst_slack) + " at t = " +
                                format_double(report.worst_t)));
  return finish("verify-iteration", ctx.out, "iteration.jsonl", records, failures);
}

int run_synthesize_control(const RunContext& ctx) {
  const Grid grid = grid_from_config(ctx.cfg);
  const EllipticSymbol symbol = symbol_from_config(ctx.cfg, grid.dim());
  const ThickSet set = generate_thick_set(grid, thickset_from_config(ctx.cfg), ctx.rng.split("set"));

  const double horizon = ctx.cfg.get_double("run.horizon", 1.0);
  HumOptions options;
  options.knots = ctx.cfg.get_size("run.knots", 64);
  options.tolerance = ctx.cfg.get_double("run.tolerance", 1e-5);
  options.penalty = ctx.cfg.get_double("run.penalty", 0.0);
  options.max_iterations = ctx.cfg.get_size("run.max_iterations", 0);
  const double residual_target = ctx.cfg.get_double("run.residual_target", 1e-3);

  const Field x0 = initial_field(ctx.cfg, "control", grid, ctx.rng.split("x0"));
  const double x0_norm = lp_norm(x0, 2.0);
  const ControlSolution solution = synthesize_control_hum(symbol, set, x0, horizon, options);

  for (std::size_t k = 0; k < solution.u.size(); ++k)
    write_pfld(ctx.out / indexed_name("control", k), solution.u[k]);

  std::string manifest = "{\n  \"knots\": [";
  for (std::size_t k = 0; k < solution.knots.size(); ++k) {
    if (k) manifest += ", ";
    manifest += format_double(solution.knots[k]);
  }
  manifest += "],\n";
  manifest += "  \"p\": " + format_double(solution.p) + ",\n";
  manifest += "  \"r\": " + format_double(solution.r) + ",\n";
  manifest += "  \"cost\": " + format_double(solution.cost) + ",\n";
  manifest += "  \"residual\": " + format_double(solution.terminal_residual) + ",\n";
  manifest += "  \"iterations\": " + std::to_string(solution.iterations) + "\n}\n";
  std::ofstream manifest_out(ctx.out / "control.json", std::ios::binary | std::ios::trunc);
  manifest_out << manifest;

  bool pass = solution.terminal_residual <= residual_target * x0_norm;
  std::vector<Record> failures;
  if (!pass)
    failures.push_back(failure_record(
        "synthesize-control", "terminal residual " + format_double(solution.terminal_residual) +
                                  " above target " + format_double(residual_target * x0_norm)));

  // Optional cost check against the theoretical bound, in log space.
  Record rec;
  rec.add("kind", "control");
  rec.add("T", horizon);
  rec.add("knots", solution.u.size());
  rec.add("cost", solution.cost);
  rec.add("terminal_residual", solution.terminal_residual);
  rec.add("dual_residual", solution.dual_residual);
  rec.add("iterations", solution.iterations);
  if (ctx.cfg.get_bool("run.check_cost", false)) {
    const GrowthBound growth = measure_growth(ctx, SemigroupOperator(symbol, grid), horizon);
    const double prefactor =
        measure_prefactor(ctx, symbol, grid, ctx.cfg.get_double("run.lambda_fit", 8.0));
    const ObservabilityConstants constants = compute_parabolic_cobs(
        symbol, set, growth, horizon, 2.0, prefactor, ctx.cfg.get_double("run.kovrijkine_k", 10.0));
    const bool cost_ok = std::log(solution.cost) <= constants.log_cobs + std::log(x0_norm);
    rec.add("log_cost", std::log(solution.cost));
    rec.add("log_C_obs", constants.log_cobs);
    rec.add("cost_within_bound", cost_ok);
    if (!cost_ok) {
      pass = false;
      failures.push_back(
          failure_record("synthesize-control", "control cost exceeds the theoretical bound"));
    }
  }
  rec.add("pass", pass);
  return finish("synthesize-control", ctx.out, "control.jsonl", {rec}, failures);
}

int run_report(const RunContext& ctx) {
  bool any = false;
  for (const auto& entry : fs::directory_iterator(ctx.out))
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") any = true;
  if (!any) {
    std::cerr << "report: no .jsonl run artifacts under " << ctx.out.string() << "\n";
    return 2;
  }
  const std::size_t rows = emit_summary(ctx.out.string());
  std::cout << "report: merged " << rows << " records into " << (ctx.out / "summary.csv").string()
            << " and " << (ctx.out / "summary.json").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral simulation and verification toolkit for parabolic observability"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  app.add_option("--config", config_path, "experiment config file (key = value lines)");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "override run.seed from the config");
  app.add_option("--threads", threads, "worker threads for probe sweeps")
      ->capture_default_str();

  struct Entry {
    const char* name;
    const char* help;
    std::function<int(const RunContext&)> handler;
    bool needs_config;
  };
  const std::vector<Entry> entries = {
      {"certify", "certify ellipticity of the configured symbol", run_certify, true},
      {"evolve", "evolve an initial datum and store the trajectory fields", run_evolve, true},
      {"verify-kernel", "fit the convolution-kernel decay envelope", run_verify_kernel, true},
      {"verify-dissipation", "measure high-band decay rates against theory",
       run_verify_dissipation, true},
      {"verify-uncertainty", "check the band-limited restriction inequality",
       run_verify_uncertainty, true},
      {"estimate-cobs", "evaluate the constant chain and the empirical ratio over a T sweep",
       run_estimate_cobs, true},
      {"verify-iteration", "check the one-step inequality behind the constant chain",
       run_verify_iteration, true},
      {"synthesize-control", "construct a dual-method control and measure its cost",
       run_synthesize_control, true},
      {"report", "merge run records into summary.csv and summary.json", run_report, false},
  };
  // Global options may appear after the subcommand name; let unmatched
  // options fall through to the parent parser.
  for (const auto& entry : entries) app.add_subcommand(entry.name, entry.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  for (const auto& entry : entries) {
    if (!app.get_subcommand(entry.name)->parsed()) continue;
    try {
      RunContext ctx{Config{}, fs::path(out_dir), SplitRng(1), threads};
      if (entry.needs_config) {
        if (config_path.empty())
          throw ConfigError(std::string(entry.name) + " requires --config");
        ctx.cfg = Config::parse_file(config_path);
      }
      const std::uint64_t run_seed =
          seed_opt->count() ? seed : ctx.cfg.get_u64("run.seed", 1);
      ctx.rng = SplitRng(run_seed);
      fs::create_directories(ctx.out);
      return entry.handler(ctx);
    } catch (const ConfigError& e) {
      std::cerr << entry.name << ": config error: " << e.what() << "\n";
      return 2;
    } catch (const Error& e) {
      std::cerr << entry.name << ": " << e.what() << "\n";
      write_jsonl((fs::path(out_dir) / ("failures_" + std::string(entry.name) + ".jsonl")).string(),
                  {failure_record(entry.name, e.what())});
      return 1;
    }
  }
  return 2;
}
