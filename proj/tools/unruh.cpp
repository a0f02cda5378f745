// unruh: sweeps, single-point measurements and oracle verification.
//
// Exit status: 0 success, 1 verification or convergence failure, 2 usage or
// I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "unruh/analytic.hpp"
#include "unruh/errors.hpp"
#include "unruh/fock_oracle.hpp"
#include "unruh/harness.hpp"
#include "unruh/kinematics.hpp"
#include "unruh/series.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct SweepArgs {
  double lo = 0.0;
  double hi = 3.0;
  int steps = 31;
  double tol = unruh::kDefaultSweepTol;
  std::string axis = "r";
  std::string out = "-";
  unsigned threads = 0;
};

struct MeasureArgs {
  std::optional<double> r;
  std::optional<double> omega;
  double tol = unruh::kDefaultSweepTol;
  std::optional<std::int64_t> n_max;
  bool json_lines = false;
};

struct VerifyArgs {
  std::vector<double> r_values{0.1, 0.5, 1.0, 2.0};
  std::int64_t n_max = unruh::kDefaultVerifyCutoff;
  double tol = unruh::kDefaultVerifyTol;
};

struct AccelArgs {
  std::optional<double> omega;
  double k = 1.0;
  double a = 1.0;
  double c = 1.0;
  std::optional<double> mass;
  std::optional<double> x;
};

int run_sweep_cmd(const SweepArgs& args) {
  unruh::SweepRequest req;
  req.lo = args.lo;
  req.hi = args.hi;
  req.steps = args.steps;
  req.tol = args.tol;
  req.axis = unruh::parse_axis(args.axis);
  req.threads = args.threads;
  // Validate before touching the output file.
  unruh::sweep_grid(req);

  const unruh::SweepResult result = unruh::run_sweep(req);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (args.out != "-") {
    file.open(args.out, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open '" << args.out << "' for writing\n";
      return kUsage;
    }
    out = &file;
  }
  unruh::write_sweep_csv(*out, result.rows);
  out->flush();
  if (!*out) {
    std::cerr << "error: write to '" << args.out << "' failed\n";
    return kUsage;
  }

  std::size_t failed = 0;
  double worst = 0.0;
  for (const unruh::SweepRecord& row : result.rows) {
    if (row.failure) {
      ++failed;
      std::cerr << "convergence failure at r=" << unruh::format_significant(row.r, 12) << ": " << *row.failure
                << '\n';
      continue;
    }
    worst = std::max(worst, row.est_error);
    for (const std::string& w : row.warnings) {
      std::cerr << "warning at r=" << unruh::format_significant(row.r, 12) << ": " << w << '\n';
    }
  }
  std::cerr << "sweep: " << result.rows.size() << " points on " << unruh::axis_name(req.axis) << " ["
            << unruh::format_significant(req.lo, 12) << ", " << unruh::format_significant(req.hi, 12)
            << "], max est_error " << unruh::format_significant(worst, 3) << ", " << failed << " failed\n";
  return failed ? kFailure : kOk;
}

int run_measure_cmd(const MeasureArgs& args) {
  if (args.r.has_value() == args.omega.has_value()) {
    std::cerr << "error: give exactly one of --r or --omega\n";
    return kUsage;
  }
  if (!(args.tol > 0.0)) throw unruh::DomainError("tolerance must be > 0");
  const unruh::SqueezingParameter sp =
      args.r ? unruh::SqueezingParameter::from_r(*args.r) : unruh::SqueezingParameter::from_omega(*args.omega);
  const unruh::MeasureBundle bundle =
      args.n_max ? unruh::measures_numeric(sp, *args.n_max) : unruh::measures_analytic(sp, args.tol);
  if (args.json_lines) {
    std::cout << unruh::format_fixture(unruh::fixture_from_bundle(bundle, args.tol)) << '\n';
  } else {
    unruh::write_bundle(std::cout, bundle, sp);
  }
  return kOk;
}

int run_verify_cmd(const VerifyArgs& args) {
  unruh::VerifyRequest req;
  req.r_values = args.r_values;
  req.n_max = args.n_max;
  req.tol = args.tol;
  if (!(req.tol > 0.0)) throw unruh::DomainError("tolerance must be > 0");
  if (req.n_max < 1 || req.n_max > unruh::kMaxOracleCutoff) {
    throw unruh::DomainError("--n-max must be in [1, " + std::to_string(unruh::kMaxOracleCutoff) + "]");
  }
  const unruh::VerificationReport report = unruh::run_verification(req);
  unruh::write_report(std::cout, report);
  return report.pass() ? kOk : kFailure;
}

int run_accel_cmd(const AccelArgs& args) {
  const auto g = [](double v) { return unruh::format_significant(v, 12); };
  if (args.mass.has_value() != args.x.has_value()) {
    std::cerr << "error: --mass and --x go together\n";
    return kUsage;
  }
  if (args.mass) {
    const unruh::NearHorizonMap m = unruh::near_horizon_accel({*args.mass, *args.x});
    std::cout << "A                     = " << g(m.a_coefficient) << '\n'
              << "accel_parameter       = " << g(m.accel_parameter) << '\n'
              << "static_observer_accel = " << g(m.static_observer_accel) << '\n'
              << "validity (Ax)^2       = " << g(m.validity) << '\n'
              << "metric_factor         = " << g(m.metric_factor) << '\n';
    return kOk;
  }
  unruh::SqueezingParameter sp = args.omega ? unruh::SqueezingParameter::from_omega(*args.omega)
                                            : unruh::squeezing_from_mode({args.k, args.a, args.c});
  std::cout << "omega  = " << g(sp.omega()) << '\n'
            << "r      = " << g(sp.r()) << '\n'
            << "tanh_r = " << g(sp.tanh_r()) << '\n'
            << "cosh_r = " << g(sp.cosh_r()) << '\n';
  if (sp.effectively_infinite()) std::cout << "regime = effectively infinite acceleration\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of a Bell state seen by a uniformly accelerated observer"};
  app.require_subcommand(1);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate every measure on a grid and write CSV");
  sweep_cmd->add_option("--r-min", sweep.lo, "Lower grid bound, in axis units")->capture_default_str();
  sweep_cmd->add_option("--r-max", sweep.hi, "Upper grid bound, in axis units")->capture_default_str();
  sweep_cmd->add_option("--steps", sweep.steps, "Number of grid points")->capture_default_str();
  sweep_cmd->add_option("--tol", sweep.tol, "Absolute tolerance per measure")->capture_default_str();
  sweep_cmd->add_option("--axis", sweep.axis, "Grid variable: r, cosh_r or omega")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "Output CSV path, - for stdout")->capture_default_str();
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads, 0 for all cores")->capture_default_str();

  MeasureArgs measure;
  auto* measure_cmd = app.add_subcommand("measure", "Print every measure at one point");
  auto* m_r = measure_cmd->add_option("--r", measure.r, "Squeezing parameter r >= 0");
  auto* m_w = measure_cmd->add_option("--omega", measure.omega, "Omega = |k| c / a > 0");
  m_r->excludes(m_w);
  measure_cmd->add_option("--tol", measure.tol, "Absolute tolerance per measure")->capture_default_str();
  measure_cmd->add_option("--n-max", measure.n_max, "Use the Fock-space oracle with this cutoff");
  measure_cmd->add_flag("--json-lines", measure.json_lines, "Emit one golden-record JSON line");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check the closed forms against the Fock-space oracle");
  verify_cmd->add_option("--r", verify.r_values, "Squeezing values to check")->capture_default_str();
  verify_cmd->add_option("--n-max", verify.n_max, "Fock cutoff")->capture_default_str();
  verify_cmd->add_option("--tol", verify.tol, "Agreement tolerance")->capture_default_str();

  AccelArgs accel;
  auto* accel_cmd = app.add_subcommand("from-acceleration", "Squeezing parameter from mode and acceleration");
  auto* a_w = accel_cmd->add_option("--omega", accel.omega, "Omega = |k| c / a");
  accel_cmd->add_option("--k", accel.k, "Mode wavenumber |k|")->capture_default_str()->excludes(a_w);
  accel_cmd->add_option("--a", accel.a, "Proper acceleration")->capture_default_str()->excludes(a_w);
  accel_cmd->add_option("--c", accel.c, "Signal speed")->capture_default_str()->excludes(a_w);
  accel_cmd->add_option("--mass", accel.mass, "Black-hole mass m, for the near-horizon map");
  accel_cmd->add_option("--x", accel.x, "Proper distance coordinate x from the horizon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sweep_cmd) return run_sweep_cmd(sweep);
    if (*measure_cmd) return run_measure_cmd(measure);
    if (*verify_cmd) return run_verify_cmd(verify);
    if (*accel_cmd) return run_accel_cmd(accel);
  } catch (const unruh::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const unruh::StructureError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const unruh::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return kFailure;
  } catch (const unruh::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
