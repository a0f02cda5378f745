#include "unruh/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <thread>

#include "unruh/analytic.hpp"
#include "unruh/errors.hpp"
#include "unruh/fock_oracle.hpp"

namespace unruh {

SweepAxis parse_axis(std::string_view name) {
  if (name == "r") return SweepAxis::R;
  if (name == "cosh_r") return SweepAxis::CoshR;
  if (name == "omega") return SweepAxis::Omega;
  throw DomainError("unknown sweep axis '" + std::string(name) + "' (expected r, cosh_r or omega)");
}

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::R:
      return "r";
    case SweepAxis::CoshR:
      return "cosh_r";
    case SweepAxis::Omega:
      return "omega";
  }
  return "r";
}

std::string format_significant(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

namespace {

struct GridPoint {
  double r = 0.0;
  std::optional<double> omega;
};

std::vector<GridPoint> grid_points(const SweepRequest& req) {
  if (req.steps < 2) throw DomainError("a sweep needs at least 2 steps");
  if (!std::isfinite(req.lo) || !std::isfinite(req.hi) || !(req.hi > req.lo)) {
    throw DomainError("sweep range must satisfy min < max");
  }
  if (!(req.tol > 0.0)) throw DomainError("tolerance must be > 0");
  std::vector<GridPoint> pts;
  pts.reserve(static_cast<std::size_t>(req.steps));
  const double span = req.hi - req.lo;
  const auto at = [&](int i) {
    return i == req.steps - 1 ? req.hi : req.lo + span * static_cast<double>(i) / (req.steps - 1);
  };
  switch (req.axis) {
    case SweepAxis::R:
      if (req.lo < 0.0) throw DomainError("r axis requires min >= 0");
      for (int i = 0; i < req.steps; ++i) pts.push_back({at(i), std::nullopt});
      break;
    case SweepAxis::CoshR:
      if (req.lo < 1.0) throw DomainError("cosh_r axis requires min >= 1");
      for (int i = 0; i < req.steps; ++i) pts.push_back({std::acosh(at(i)), std::nullopt});
      break;
    case SweepAxis::Omega:
      if (!(req.lo > 0.0)) throw DomainError("omega axis requires min > 0");
      // Large Omega is small r: walk the axis backwards for ascending r.
      for (int i = req.steps - 1; i >= 0; --i) {
        const double w = at(i);
        pts.push_back({SqueezingParameter::from_omega(w).r(), w});
      }
      break;
  }
  return pts;
}

SweepRecord evaluate_point(const GridPoint& pt, const SweepRequest& req) {
  SweepRecord rec;
  rec.r = pt.r;
  rec.omega = pt.omega;
  try {
    const SqueezingParameter sp =
        pt.omega ? SqueezingParameter::from_omega(*pt.omega) : SqueezingParameter::from_r(pt.r);
    const MeasureBundle b = measures_analytic(sp, req.tol, req.limits);
    rec.log_negativity = b.log_negativity.value;
    rec.mutual_information = b.mutual_information.value;
    rec.entropy_joint = b.entropy_joint.value;
    rec.entropy_rob = b.entropy_rob.value;
    rec.sigma = b.sigma.value;
    rec.sigma_upper = b.sigma_upper;
    rec.est_error = b.max_error();
    rec.terms_used = b.terms_used;
    rec.warnings = b.warnings;
  } catch (const ConvergenceError& e) {
    rec.failure = e.what();
  } catch (const NumericalError& e) {
    rec.failure = e.what();
  }
  return rec;
}

}  // namespace

std::vector<double> sweep_grid(const SweepRequest& request) {
  std::vector<double> out;
  for (const GridPoint& p : grid_points(request)) out.push_back(p.r);
  return out;
}

bool SweepResult::ok() const {
  return std::none_of(rows.begin(), rows.end(), [](const SweepRecord& r) { return r.failure.has_value(); });
}

SweepResult run_sweep(const SweepRequest& request) {
  const std::vector<GridPoint> pts = grid_points(request);
  SweepResult result;
  result.rows.resize(pts.size());

  unsigned workers = request.threads ? request.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(pts.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < pts.size(); i = next++) result.rows[i] = evaluate_point(pts[i], request);
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  return result;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& rows) {
  out << kSweepCsvHeader << '\n';
  const auto g12 = [](double v) { return format_significant(v, 12); };
  for (const SweepRecord& rec : rows) {
    if (rec.failure) {
      out << "#convergence-failure,r=" << g12(rec.r) << ",\"" << *rec.failure << "\"\n";
      continue;
    }
    out << g12(rec.r) << ',' << (rec.omega ? g12(*rec.omega) : std::string()) << ',' << g12(rec.log_negativity)
        << ',' << g12(rec.mutual_information) << ',' << g12(rec.entropy_joint) << ',' << g12(rec.entropy_rob)
        << ',' << g12(rec.sigma) << ',' << g12(rec.sigma_upper) << ',' << g12(rec.est_error) << ','
        << rec.terms_used << '\n';
  }
}

FixtureRecord fixture_from_bundle(const MeasureBundle& bundle, double tol) {
  FixtureRecord f;
  f.r = bundle.r;
  f.n_max = bundle.n_max;
  f.tol = tol;
  f.log_negativity = bundle.log_negativity.value;
  f.mutual_information = bundle.mutual_information.value;
  f.entropy_joint = bundle.entropy_joint.value;
  f.entropy_rob = bundle.entropy_rob.value;
  f.sigma = bundle.sigma.value;
  return f;
}

namespace {

constexpr std::array<const char*, 8> kFixtureKeys = {"r", "n_max", "tol", "N", "I", "S_AR", "S_RI", "sigma"};

}  // namespace

std::string format_fixture(const FixtureRecord& f) {
  const auto g17 = [](double v) { return format_significant(v, 17); };
  std::string s = "{";
  s += "\"r\": " + g17(f.r);
  s += ", \"n_max\": " + std::to_string(f.n_max);
  s += ", \"tol\": " + g17(f.tol);
  s += ", \"N\": " + g17(f.log_negativity);
  s += ", \"I\": " + g17(f.mutual_information);
  s += ", \"S_AR\": " + g17(f.entropy_joint);
  s += ", \"S_RI\": " + g17(f.entropy_rob);
  s += ", \"sigma\": " + g17(f.sigma);
  s += "}";
  return s;
}

FixtureRecord parse_fixture(std::string_view line) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw StructureError(std::string("fixture line is not JSON: ") + e.what());
  }
  if (!j.is_object() || j.size() != kFixtureKeys.size()) {
    throw StructureError("fixture record must have exactly 8 keys");
  }
  std::size_t i = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++i) {
    if (it.key() != kFixtureKeys[i]) {
      throw StructureError("fixture key #" + std::to_string(i) + " is '" + it.key() + "', expected '" +
                           kFixtureKeys[i] + "'");
    }
    if (!it.value().is_number()) throw StructureError("fixture field '" + it.key() + "' is not a number");
  }
  FixtureRecord f;
  f.r = j["r"].get<double>();
  f.n_max = j["n_max"].get<std::int64_t>();
  f.tol = j["tol"].get<double>();
  f.log_negativity = j["N"].get<double>();
  f.mutual_information = j["I"].get<double>();
  f.entropy_joint = j["S_AR"].get<double>();
  f.entropy_rob = j["S_RI"].get<double>();
  f.sigma = j["sigma"].get<double>();
  return f;
}

std::vector<FixtureRecord> read_fixtures(std::istream& in) {
  std::vector<FixtureRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_fixture(line));
  }
  return out;
}

void write_bundle(std::ostream& out, const MeasureBundle& b, const SqueezingParameter& sp) {
  const auto g = [](double v) { return format_significant(v, 12); };
  const auto field = [&](const char* name, const Estimate& e) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-20s = %s  +/- %s\n", name, g(e.value).c_str(),
                  format_significant(e.error, 3).c_str());
    out << buf;
  };
  const auto plain = [&](const char* name, const std::string& v) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-20s = %s\n", name, v.c_str());
    out << buf;
  };
  plain("r", g(sp.r()));
  plain("cosh_r", std::isfinite(sp.cosh_r()) ? g(sp.cosh_r()) : "inf");
  plain("omega", std::isfinite(sp.omega()) ? g(sp.omega()) : "inf");
  if (sp.effectively_infinite()) plain("regime", "effectively infinite acceleration");
  field("log_negativity", b.log_negativity);
  field("sigma", b.sigma);
  plain("sigma_lower", g(b.sigma_lower));
  plain("sigma_upper", g(b.sigma_upper));
  field("entropy_joint", b.entropy_joint);
  field("entropy_rob", b.entropy_rob);
  field("entropy_alice", b.entropy_alice);
  field("mutual_information", b.mutual_information);
  plain("terms_used", std::to_string(b.terms_used));
  for (const std::string& w : b.warnings) plain("warning", w);
}

bool VerificationReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const VerificationRow& r) { return r.pass; });
}

namespace {

VerificationRow compare(double r, std::string quantity, double analytic, double oracle, double allowed) {
  VerificationRow row;
  row.r = r;
  row.quantity = std::move(quantity);
  row.analytic = analytic;
  row.oracle = oracle;
  row.abs_diff = std::abs(analytic - oracle);
  row.allowed = allowed;
  row.pass = row.abs_diff <= allowed;
  return row;
}

VerificationRow failure_row(double r, std::string quantity, std::string note) {
  VerificationRow row;
  row.r = r;
  row.quantity = std::move(quantity);
  row.analytic = row.oracle = row.abs_diff = NAN;
  row.pass = false;
  row.note = std::move(note);
  return row;
}

void verify_point(double r, const VerifyRequest& req, std::vector<VerificationRow>& rows) {
  if (!std::isfinite(r) || r < 0.0) {
    rows.push_back(failure_row(r, "input", "r must be finite and >= 0"));
    return;
  }
  const SqueezingParameter sp = SqueezingParameter::from_r(r);
  MeasureBundle analytic;
  try {
    // A tenth of the comparison tolerance, so the analytic side's own error
    // does not eat the allowance.
    analytic = measures_analytic(sp, req.tol / 10.0);
  } catch (const std::exception& e) {
    rows.push_back(failure_row(r, "analytic", e.what()));
    return;
  }
  OracleReport oracle;
  try {
    oracle = oracle_report(sp, req.n_max);
  } catch (const std::exception& e) {
    rows.push_back(failure_row(r, "oracle", e.what()));
    return;
  }

  VerificationRow trunc;
  trunc.r = r;
  trunc.quantity = "truncation";
  trunc.analytic = trunc.oracle = NAN;
  trunc.abs_diff = oracle.truncation_bound;
  trunc.allowed = req.tol;
  trunc.pass = oracle.truncation_bound <= req.tol;
  trunc.note = "tail bound at n_max=" + std::to_string(req.n_max);
  rows.push_back(trunc);

  const MeasureBundle& o = oracle.bundle;
  rows.push_back(compare(r, "N", analytic.log_negativity.value, o.log_negativity.value, req.tol));
  rows.push_back(compare(r, "S_AR", analytic.entropy_joint.value, o.entropy_joint.value, req.tol));
  rows.push_back(compare(r, "S_RI", analytic.entropy_rob.value, o.entropy_rob.value, req.tol));
  rows.push_back(compare(r, "S_A", analytic.entropy_alice.value, o.entropy_alice.value, req.tol));
  rows.push_back(compare(r, "I", analytic.mutual_information.value, o.mutual_information.value, req.tol));
  rows.push_back(compare(r, "sigma", analytic.sigma.value, o.sigma.value, req.tol));

  VerificationRow purity = compare(r, "purity S_AR=S_RII", o.entropy_joint.value, oracle.entropy_region_ii, req.tol);
  purity.note = "oracle only";
  rows.push_back(purity);

  VerificationRow bounds;
  bounds.r = r;
  bounds.quantity = "sigma bounds";
  bounds.analytic = analytic.sigma.value;
  bounds.oracle = NAN;
  bounds.abs_diff = NAN;
  bounds.allowed = analytic.sigma.error;
  bounds.pass = analytic.sigma.value >= analytic.sigma_lower - analytic.sigma.error &&
                analytic.sigma.value < analytic.sigma_upper + analytic.sigma.error;
  bounds.note = "[" + format_significant(analytic.sigma_lower, 12) + ", " +
                format_significant(analytic.sigma_upper, 12) + ")";
  rows.push_back(bounds);

  const std::vector<OracleBlock> blocks = group_pt_spectrum(oracle);
  double worst = 0.0;
  std::int64_t worst_n = 0;
  bool complete = true;
  const std::int64_t limit = std::min(req.block_limit, req.n_max - 1);
  for (std::int64_t n = 0; n <= limit; ++n) {
    const auto it = std::find_if(blocks.begin(), blocks.end(), [n](const OracleBlock& b) { return b.n == n; });
    if (it == blocks.end() || it->eigenvalues.size() != 2) {
      complete = false;
      worst_n = n;
      break;
    }
    const BlockSpectrum expect = pt_block_eigenvalues(sp, n);
    const double d = std::max(std::abs(expect.lambda_plus - it->eigenvalues[0]),
                              std::abs(expect.lambda_minus - it->eigenvalues[1]));
    if (d > worst) {
      worst = d;
      worst_n = n;
    }
  }
  VerificationRow block_row;
  block_row.r = r;
  block_row.quantity = "PT blocks n<=" + std::to_string(limit);
  block_row.analytic = block_row.oracle = NAN;
  block_row.abs_diff = complete ? worst : NAN;
  block_row.allowed = req.block_tol;
  block_row.pass = complete && worst <= req.block_tol;
  block_row.note = complete ? "worst at n=" + std::to_string(worst_n)
                            : "oracle block " + std::to_string(worst_n) + " not a pair";
  rows.push_back(block_row);

  for (const std::string& w : analytic.warnings) {
    VerificationRow warn = failure_row(r, "warning", w);
    warn.pass = true;
    rows.push_back(warn);
  }
}

}  // namespace

VerificationReport run_verification(const VerifyRequest& request) {
  VerificationReport report;
  for (double r : request.r_values) verify_point(r, request, report.rows);
  return report;
}

void write_report(std::ostream& out, const VerificationReport& report) {
  const auto g = [](double v) { return std::isnan(v) ? std::string("-") : format_significant(v, 12); };
  char buf[320];
  std::snprintf(buf, sizeof buf, "%-8s %-20s %-20s %-20s %-10s %-10s %-5s %s\n", "r", "quantity", "analytic",
                "oracle", "abs_diff", "allowed", "ok", "note");
  out << buf;
  for (const VerificationRow& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%-8s %-20s %-20s %-20s %-10s %-10s %-5s %s\n", g(row.r).c_str(),
                  row.quantity.c_str(), g(row.analytic).c_str(), g(row.oracle).c_str(),
                  std::isnan(row.abs_diff) ? "-" : format_significant(row.abs_diff, 3).c_str(),
                  format_significant(row.allowed, 3).c_str(), row.pass ? "PASS" : "FAIL", row.note.c_str());
    out << buf;
  }
  out << "verdict: " << (report.pass() ? "PASS" : "FAIL") << '\n';
}

}  // namespace unruh
