#pragma once

// Sweep, single-point measurement and oracle cross-validation, plus the two
// on-disk formats: the sweep CSV and the JSON-lines golden records.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unruh/kinematics.hpp"
#include "unruh/measures.hpp"
#include "unruh/series.hpp"

namespace unruh {

enum class SweepAxis { R, CoshR, Omega };

/// "r", "cosh_r" or "omega"; DomainError otherwise.
SweepAxis parse_axis(std::string_view name);
std::string_view axis_name(SweepAxis axis);

inline constexpr double kDefaultSweepTol = 1e-10;
inline constexpr double kDefaultVerifyTol = 1e-8;
inline constexpr std::int64_t kDefaultVerifyCutoff = 400;

/// Grid bounds are in units of `axis`: r, cosh r or Omega.
struct SweepRequest {
  double lo = 0.0;
  double hi = 3.0;
  int steps = 31;
  double tol = kDefaultSweepTol;
  SweepAxis axis = SweepAxis::R;
  unsigned threads = 0;  ///< 0 picks hardware concurrency
  SummationLimits limits;
};

struct SweepRecord {
  double r = 0.0;
  std::optional<double> omega;
  double log_negativity = 0.0;
  double mutual_information = 0.0;
  double entropy_joint = 0.0;
  double entropy_rob = 0.0;
  double sigma = 0.0;
  double sigma_upper = 0.0;
  double est_error = 0.0;
  std::int64_t terms_used = 0;
  /// Set when the point failed; the numeric fields are then meaningless.
  std::optional<std::string> failure;
  std::vector<std::string> warnings;
};

/// Squeezing values of the grid, ascending in r. DomainError for fewer than
/// two steps, an empty range, or bounds outside the axis domain.
std::vector<double> sweep_grid(const SweepRequest& request);

struct SweepResult {
  std::vector<SweepRecord> rows;  ///< ascending r
  bool ok() const;
};

SweepResult run_sweep(const SweepRequest& request);

inline constexpr std::string_view kSweepCsvHeader =
    "r,omega,log_negativity,mutual_information,entropy_joint,entropy_rob,sigma,sigma_upper,est_error,terms_used";

/// Header plus one line per record; failed points become a line starting
/// with "#convergence-failure".
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& rows);

/// printf-style %.<digits>g in the C locale.
std::string format_significant(double value, int digits);

/// One golden record: {"r", "n_max", "tol", "N", "I", "S_AR", "S_RI", "sigma"}
/// in that order, 17 significant digits.
struct FixtureRecord {
  double r = 0.0;
  std::int64_t n_max = 0;
  double tol = 0.0;
  double log_negativity = 0.0;
  double mutual_information = 0.0;
  double entropy_joint = 0.0;
  double entropy_rob = 0.0;
  double sigma = 0.0;
};

FixtureRecord fixture_from_bundle(const MeasureBundle& bundle, double tol);
std::string format_fixture(const FixtureRecord& record);
/// StructureError when keys are missing, extra, or out of order.
FixtureRecord parse_fixture(std::string_view line);
/// Skips blank lines.
std::vector<FixtureRecord> read_fixtures(std::istream& in);

/// Human-readable listing of every bundle field with its error estimate.
void write_bundle(std::ostream& out, const MeasureBundle& bundle, const SqueezingParameter& sp);

struct VerifyRequest {
  std::vector<double> r_values{0.1, 0.5, 1.0, 2.0};
  std::int64_t n_max = kDefaultVerifyCutoff;
  double tol = kDefaultVerifyTol;
  std::int64_t block_limit = 60;  ///< compare PT blocks n <= block_limit
  double block_tol = 1e-9;
};

struct VerificationRow {
  double r = 0.0;
  std::string quantity;
  double analytic = 0.0;
  double oracle = 0.0;
  double abs_diff = 0.0;
  double allowed = 0.0;
  bool pass = false;
  std::string note;
};

struct VerificationReport {
  std::vector<VerificationRow> rows;
  bool pass() const;
};

VerificationReport run_verification(const VerifyRequest& request);
void write_report(std::ostream& out, const VerificationReport& report);

}  // namespace unruh
