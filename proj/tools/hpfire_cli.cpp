// hpfire: construct, simulate, check and cross-validate barrier systems.
//
// Exit status: 0 success / PASS, 1 FAIL, 2 usage or input error.
// Relative output paths are placed under $HPFIRE_OUT_DIR when it is set.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "hpfire/constructions.hpp"
#include "hpfire/consumption.hpp"
#include "hpfire/document.hpp"
#include "hpfire/grid_oracle.hpp"
#include "hpfire/io.hpp"
#include "hpfire/optimizer.hpp"

namespace fs = std::filesystem;
using namespace hpfire;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Systems without verticals have no natural horizon; simulate this many head-starts.
constexpr int kFlatHorizonFactor = 100;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path output_path(const std::string& given) {
  fs::path p(given);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("HPFIRE_OUT_DIR"); dir && *dir) return fs::path(dir) / p;
  }
  return p;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(output_path(out), text);
  }
}

struct Horizon {
  std::optional<std::string> requested;
};

// Resolves the horizon flag for a system; warns when it passes the valid horizon.
template <typename Scalar>
std::pair<Scalar, CurveOptions> resolve_horizon(const BarrierSystem<Scalar>& system, const Horizon& flag) {
  const auto valid = valid_horizon(system);
  Scalar horizon = flag.requested ? parse_scalar<Scalar>(*flag.requested)
                   : valid        ? *valid
                                  : Scalar(kFlatHorizonFactor) * system.head_start;
  if (!(horizon > Scalar(0))) throw UsageError("horizon must be positive");
  CurveOptions options;
  if (valid && *valid < horizon) {
    std::cerr << "warning: horizon " << format_scalar(horizon) << " exceeds the valid horizon "
              << format_scalar(*valid) << "; the curve past it ignores barriers not in the document\n";
    options.allow_truncated = true;
  }
  return {horizon, options};
}

template <typename Scalar>
std::string show(const Scalar& x) {
  if constexpr (is_exact_v<Scalar>) {
    const std::string exact = format_scalar(x);
    if (exact.find('/') == std::string::npos) return exact;
    return exact + " (" + ScalarTraits<double>::format(to_double(x)) + ")";
  } else {
    return format_scalar(x);
  }
}

int cmd_construct(const std::string& type, const std::optional<std::string>& headstart, int cycles,
                  std::optional<double> beta, std::optional<double> delta, const std::optional<std::string>& mode,
                  const std::string& out) {
  if (cycles < 1) throw UsageError("--cycles must be at least 1");
  if (type == "improved") {
    if (mode && *mode != "float") throw UsageError("the improved construction is irrational; use --mode float");
    InterlacingParams params;
    params.cycles = cycles;
    if (beta || delta) {
      if (!beta || !delta) throw UsageError("--beta and --delta go together");
      params.beta = *beta;
      params.delta = *delta;
    } else {
      const Optimum opt = optimize_beta_delta();
      params.beta = opt.beta;
      params.delta = *opt.delta;
    }
    BarrierSystem<double> system = build_improved(params);
    if (headstart) {
      const double s = parse_scalar<double>(*headstart);
      if (!(s > 0.0)) throw UsageError("--headstart must be positive");
      system = scale(system, s / system.head_start);
    }
    emit(out, save(system));
    return kPass;
  }
  if (beta || delta) throw UsageError("--beta/--delta only apply to --type improved");
  const Rational s = parse_scalar<Rational>(headstart.value_or("1"));
  if (!(s > Rational(0))) throw UsageError("--headstart must be positive");
  const BarrierSystem<Rational> system = type == "flat" ? build_flat(s) : build_seventeen_ninths(s, cycles);
  if (mode && *mode == "float") {
    emit(out, save(convert<double>(system)));
  } else {
    emit(out, save(system));
  }
  return kPass;
}

int cmd_simulate(const std::string& input, const Horizon& horizon_flag, const std::string& prefix_flag) {
  const AnySystem any = load_file(input);
  const std::string prefix = prefix_flag.empty() ? fs::path(input).stem().string() : prefix_flag;
  return std::visit(
      [&](const auto& system) {
        const auto [horizon, options] = resolve_horizon(system, horizon_flag);
        const auto curves = consumption_curve(system, horizon, options);
        const fs::path csv = output_path(prefix + ".csv");
        const fs::path json = output_path(prefix + ".intervals.json");
        write_text_file(csv, curve_csv(curves));
        write_text_file(json, intervals_json(curves).dump(2) + "\n");
        const auto report = ratio_maxima(curves.total, curves.valid_horizon.value_or(horizon));
        std::cout << "horizon " << show(horizon) << ", B = " << show(curves.total.points().back().value) << "\n"
                  << "sup Q = " << show(report.supremum.q) << " at t = " << show(report.supremum.t) << "\n"
                  << "wrote " << csv.string() << " and " << json.string() << "\n";
        return kPass;
      },
      any);
}

int cmd_maxima(const std::string& input, const Horizon& horizon_flag, const std::optional<std::string>& speed,
               const std::string& out) {
  const AnySystem any = load_file(input);
  return std::visit(
      [&](const auto& system) {
        using Scalar = typename std::decay_t<decltype(system)>::scalar_type;
        const auto [horizon, options] = resolve_horizon(system, horizon_flag);
        const auto curves = consumption_curve(system, horizon, options);
        auto report = ratio_maxima(curves.total, min_value(horizon, curves.valid_horizon.value_or(horizon)));
        if (speed) report.feasible_for = check_speed(curves.total, parse_scalar<Scalar>(*speed));
        emit(out, ratio_report_json(report).dump(2) + "\n");
        return kPass;
      },
      any);
}

int cmd_check(const std::string& input, const std::string& speed, const Horizon& horizon_flag,
              const std::string& report_path) {
  const AnySystem any = load_file(input);
  return std::visit(
      [&](const auto& system) {
        using Scalar = typename std::decay_t<decltype(system)>::scalar_type;
        const Scalar v = parse_scalar<Scalar>(speed);
        if (!(v > Scalar(0))) throw UsageError("--speed must be positive");
        const auto [horizon, options] = resolve_horizon(system, horizon_flag);
        const auto verdict = check_speed(system, v, horizon, options);
        if (verdict.feasible) {
          std::cout << "PASS: B(t) <= " << show(v) << " t for t <= " << show(verdict.checked_until) << "\n";
        } else {
          std::cout << "FAIL: B(t) > " << show(v) << " t just after t = " << show(*verdict.earliest_violation)
                    << "\n";
        }
        if (!report_path.empty()) write_text_file(output_path(report_path), verdict_json(verdict).dump(2) + "\n");
        return verdict.feasible ? kPass : kFail;
      },
      any);
}

int cmd_oracle(const std::string& input, std::optional<double> cell, const Horizon& horizon_flag,
               const std::string& csv_out, const std::string& out) {
  const AnySystem any = load_file(input);
  const BarrierSystem<double> system = std::visit(
      [](const auto& s) -> BarrierSystem<double> { return convert<double>(s); }, any);
  const double h = cell.value_or(system.head_start / 8.0);
  if (!(h > 0.0)) throw UsageError("--cell must be positive");
  const auto [horizon, options] = resolve_horizon(system, horizon_flag);
  const auto exact = consumption_curve(system, horizon, options);
  const SampledCurve sampled = grid_consumption(system, h, horizon);
  const Comparison cmp = compare(exact.total, sampled.t, sampled.total, oracle_tolerance(h, face_count(system)));
  if (!csv_out.empty()) write_text_file(output_path(csv_out), sampled_csv(sampled));
  emit(out, comparison_json(cmp, h).dump(2) + "\n");
  std::cerr << (cmp.pass ? "PASS" : "FAIL") << ": max |B~ - B| = " << cmp.max_deviation
            << " (tolerance " << cmp.tolerance << ")\n";
  return cmp.pass ? kPass : kFail;
}

int cmd_optimize(const std::string& scheme, double lo, double hi, double tol, const std::string& out) {
  const SearchBracket bracket{lo, hi, tol};
  if (!(lo < hi)) throw UsageError("--lo must be below --hi");
  const Optimum opt = scheme == "beta" ? optimize_beta(bracket) : optimize_beta_delta(bracket);
  if (!opt.unimodal) std::cerr << "warning: objective is not unimodal on [" << lo << ", " << hi << "]\n";
  emit(out, optimum_json(opt).dump(2) + "\n");
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fire containment by barriers in the L1 half-plane"};
  app.require_subcommand(1);
  int status = kPass;

  std::string type, out, input, prefix, speed_text, report_path, csv_out, scheme;
  std::optional<std::string> headstart, mode, speed_opt;
  std::optional<double> beta, delta, cell;
  int cycles = kDefaultCycles;
  Horizon horizon;
  double lo = 2.5, hi = 10.0, tol = 1e-9;

  auto* construct = app.add_subcommand("construct", "Write a barrier-system document");
  construct->add_option("--type", type, "flat | seventeen-ninths | improved")
      ->required()
      ->check(CLI::IsMember({"flat", "seventeen-ninths", "improved"}));
  construct->add_option("--headstart", headstart, "head-start s (improved: rescale to this s)");
  construct->add_option("--cycles", cycles, "verticals per side")->capture_default_str();
  construct->add_option("--beta", beta, "improved: growth factor (default: optimised)");
  construct->add_option("--delta", delta, "improved: shift factor (default: optimised)");
  construct->add_option("--mode", mode, "rational | float")->check(CLI::IsMember({"rational", "float"}));
  construct->add_option("--out", out, "output document (default: stdout)");
  construct->callback([&] { status = cmd_construct(type, headstart, cycles, beta, delta, mode, out); });

  auto add_horizon = [&](CLI::App* cmd) {
    cmd->add_option("--horizon", horizon.requested, "simulation horizon (default: valid horizon)");
  };

  auto* simulate = app.add_subcommand("simulate", "Consumption curve CSV and k-interval JSON");
  simulate->add_option("--system", input, "barrier-system document")->required()->check(CLI::ExistingFile);
  add_horizon(simulate);
  simulate->add_option("--out", prefix, "output prefix (default: document stem)");
  simulate->callback([&] { status = cmd_simulate(input, horizon, prefix); });

  auto* maxima = app.add_subcommand("maxima", "Local maxima and supremum of B(t)/t as JSON");
  maxima->add_option("--system", input, "barrier-system document")->required()->check(CLI::ExistingFile);
  add_horizon(maxima);
  maxima->add_option("--speed", speed_opt, "also check this speed");
  maxima->add_option("--out", out, "output file (default: stdout)");
  maxima->callback([&] { status = cmd_maxima(input, horizon, speed_opt, out); });

  auto* check = app.add_subcommand("check", "Does B(t) <= v t hold? Exit 0 if so, 1 if not");
  check->add_option("--system", input, "barrier-system document")->required()->check(CLI::ExistingFile);
  check->add_option("--speed", speed_text, "barrier speed v (\"p/q\" or decimal)")->required();
  add_horizon(check);
  check->add_option("--report", report_path, "JSON report file");
  check->callback([&] { status = cmd_check(input, speed_text, horizon, report_path); });

  auto* oracle = app.add_subcommand("oracle", "Compare against the grid oracle");
  oracle->add_option("--system", input, "barrier-system document")->required()->check(CLI::ExistingFile);
  oracle->add_option("--cell", cell, "cell size h (default: s/8)");
  add_horizon(oracle);
  oracle->add_option("--csv", csv_out, "sampled curve CSV");
  oracle->add_option("--out", out, "comparison JSON (default: stdout)");
  oracle->callback([&] { status = cmd_oracle(input, cell, horizon, csv_out, out); });

  auto* optimize = app.add_subcommand("optimize", "Optimal interlacing parameters as JSON");
  optimize->add_option("--scheme", scheme, "beta | beta-delta")
      ->required()
      ->check(CLI::IsMember({"beta", "beta-delta"}));
  optimize->add_option("--lo", lo, "bracket start")->capture_default_str();
  optimize->add_option("--hi", hi, "bracket end")->capture_default_str();
  optimize->add_option("--tol", tol, "argument tolerance")->capture_default_str();
  optimize->add_option("--out", out, "output file (default: stdout)");
  optimize->callback([&] { status = cmd_optimize(scheme, lo, hi, tol, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return status;
}
