// Acceptance suite: one PASS/FAIL line per criterion.
//
//   unruh_acceptance [--criterion N] [--cli path/to/unruh]
//
// Exit status is 0 only if every selected criterion passes.

#include <CLI11.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "unruh/analytic.hpp"
#include "unruh/fock_oracle.hpp"
#include "unruh/harness.hpp"

namespace {

using unruh::SqueezingParameter;

// Tolerances and budgets, fixed here rather than read from anywhere.
constexpr double kZeroAccelTol = 1e-10;
constexpr double kZeroAccelSeconds = 1.0;
constexpr double kLimitR = 20.0;
constexpr double kLimitNegSlack = 1e-10;
constexpr double kLimitMutualTol = 1e-6;
constexpr double kLimitSeconds = 5.0;
constexpr int kSigmaGridPoints = 50;
constexpr double kSigmaZeroTol = 1e-12;
constexpr double kSigmaSeconds = 5.0;
constexpr double kOracleTol = 1e-8;
constexpr double kBlockTol = 1e-9;
constexpr std::int64_t kBlockLimit = 60;
constexpr std::int64_t kOracleCutoff = 400;
constexpr double kOracleSeconds = 60.0;
constexpr double kPurityTol = 1e-8;
constexpr double kPuritySeconds = 30.0;
constexpr int kPptGridPoints = 100;
constexpr double kPptThreshold = -1e-15;
constexpr double kPptSeconds = 10.0;
constexpr double kShapeSeconds = 10.0;
constexpr double kGoldenTol = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CommandResult {
  int code = -1;
  std::string out;
};

std::string g(double v, int digits = 6) { return unruh::format_significant(v, digits); }

CommandResult run(const std::string& cli, const std::string& args) {
  const std::string cmd = "'" + cli + "' " + args + " 2>/dev/null";
  CommandResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  const int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

struct CsvRow {
  double r = 0.0;
  double log_negativity = 0.0;
  double mutual_information = 0.0;
};

std::vector<CsvRow> parse_csv(const std::string& text, bool& well_formed) {
  std::vector<CsvRow> rows;
  std::istringstream in(text);
  std::string line;
  well_formed = static_cast<bool>(std::getline(in, line)) && line == unruh::kSweepCsvHeader;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      well_formed = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 10) {
      well_formed = false;
      continue;
    }
    rows.push_back({std::stod(cells[0]), std::stod(cells[2]), std::stod(cells[3])});
  }
  return rows;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome zero_acceleration(const std::string& cli) {
  const CommandResult res = run(cli, "measure --r 0 --json-lines");
  if (res.code != 0) return {false, "measure exited " + std::to_string(res.code)};
  const unruh::FixtureRecord f = unruh::parse_fixture(res.out);
  const double dn = std::abs(f.log_negativity - 1.0);
  const double di = std::abs(f.mutual_information - 2.0);
  return {dn <= kZeroAccelTol && di <= kZeroAccelTol, "|N-1|=" + g(dn, 3) + " |I-2|=" + g(di, 3)};
}

Outcome infinite_acceleration(const std::string& cli) {
  const CommandResult res = run(cli, "measure --r 20 --json-lines");
  if (res.code != 0) return {false, "measure exited " + std::to_string(res.code)};
  const unruh::FixtureRecord f = unruh::parse_fixture(res.out);
  const double bound = std::log2(1.0 + 1.0 / std::cosh(kLimitR)) + kLimitNegSlack;
  const double di = std::abs(f.mutual_information - 1.0);
  return {f.log_negativity <= bound && di <= kLimitMutualTol,
          "N=" + g(f.log_negativity, 4) + " <= " + g(bound, 4) + ", |I-1|=" + g(di, 3)};
}

Outcome sigma_bounds_hold() {
  int violations = 0;
  double worst_margin = INFINITY;
  for (int i = 0; i < kSigmaGridPoints; ++i) {
    const double r = 0.01 + (10.0 - 0.01) * i / (kSigmaGridPoints - 1);
    const auto sp = SqueezingParameter::from_r(r);
    const double sigma = unruh::sigma_series(sp, 1e-13).value;
    const unruh::SigmaBounds b = unruh::sigma_bounds(sp);
    if (!(sigma >= b.lower && sigma < b.upper)) ++violations;
    worst_margin = std::min({worst_margin, sigma - b.lower, b.upper - sigma});
  }
  const double s0 = unruh::sigma_series(SqueezingParameter::from_r(0.0), 1e-14).value;
  const double d0 = std::abs(s0 - 1.5);
  return {violations == 0 && d0 <= kSigmaZeroTol, std::to_string(violations) + " violations on " +
                                                      std::to_string(kSigmaGridPoints) + " points, |Sigma(0)-3/2|=" +
                                                      g(d0, 3) + ", min margin " + g(worst_margin, 3)};
}

Outcome oracle_equivalence(const std::string& cli) {
  unruh::VerifyRequest req;
  req.r_values = {0.1, 0.5, 1.0, 2.0};
  req.n_max = kOracleCutoff;
  req.tol = kOracleTol;
  req.block_limit = kBlockLimit;
  req.block_tol = kBlockTol;
  const unruh::VerificationReport rep = unruh::run_verification(req);
  double worst = 0.0;
  bool fields_ok = true;
  bool blocks_ok = false;
  for (const unruh::VerificationRow& row : rep.rows) {
    if (row.quantity == "N" || row.quantity == "S_AR" || row.quantity == "S_RI" || row.quantity == "I") {
      worst = std::max(worst, row.abs_diff);
      fields_ok = fields_ok && row.abs_diff <= kOracleTol;
    }
    if (row.r == 1.0 && row.quantity.rfind("PT blocks", 0) == 0) blocks_ok = row.pass && row.abs_diff <= kBlockTol;
  }
  const CommandResult cmd = run(cli, "verify --r 0.1 0.5 1 2 --n-max 400 --tol 1e-8");
  return {rep.pass() && fields_ok && blocks_ok && cmd.code == 0,
          "worst field diff " + g(worst, 3) + ", blocks@r=1 " + (blocks_ok ? "ok" : "FAIL") + ", verify exit " +
              std::to_string(cmd.code)};
}

Outcome purity_identity() {
  double worst = 0.0;
  for (double r : {0.25, 0.5, 1.0, 2.0}) {
    const unruh::OracleReport rep = unruh::oracle_report(SqueezingParameter::from_r(r), kOracleCutoff);
    worst = std::max(worst, std::abs(rep.bundle.entropy_joint.value - rep.entropy_region_ii));
  }
  return {worst < kPurityTol, "max |S_AR - S_RII| = " + g(worst, 3) + " at n_max=" + std::to_string(kOracleCutoff)};
}

// Most negative PT eigenvalue from the block formulas; blocks past the point
// where x^n has decayed below 1e-3 of its start cannot win.
double most_negative_pt_eigenvalue(const SqueezingParameter& sp) {
  double best = 0.0;
  for (std::int64_t n = 0; n < 100000; ++n) {
    const double lm = unruh::pt_block_eigenvalues(sp, n).lambda_minus;
    best = std::min(best, lm);
    if (sp.tanh2_pow(static_cast<double>(n)) < 1e-3) break;
  }
  return best;
}

Outcome ppt_negativity() {
  int missing = 0;
  double first_bad = NAN;
  double worst = -INFINITY;
  for (int i = 1; i <= kPptGridPoints; ++i) {
    const double r = 10.0 * i / kPptGridPoints;
    const double lm = most_negative_pt_eigenvalue(SqueezingParameter::from_r(r));
    if (!(lm < kPptThreshold)) {
      ++missing;
      if (std::isnan(first_bad)) first_bad = r;
    }
    worst = std::max(worst, lm);
  }
  // Spot check the block formula against the dense oracle where it is cheap.
  const auto sp = SqueezingParameter::from_r(1.0);
  const unruh::OracleReport rep = unruh::oracle_report(sp, 120);
  const double dense_min = *std::min_element(rep.pt_system.values.begin(), rep.pt_system.values.end());
  const double formula_min = most_negative_pt_eigenvalue(sp);
  const bool consistent = std::abs(dense_min - formula_min) <= 1e-12;
  std::string detail = std::to_string(kPptGridPoints - missing) + "/" + std::to_string(kPptGridPoints) +
                       " points have an eigenvalue < " + g(kPptThreshold, 2) +
                       "; least negative minimum " + g(worst, 3);
  if (missing) detail += ", first miss at r=" + g(first_bad, 4);
  if (!consistent) detail += ", dense/formula mismatch at r=1";
  return {missing == 0 && consistent, detail};
}

Outcome figure_shapes(const std::string& cli, const std::filesystem::path& fixtures) {
  bool wf1 = false, wf2 = false;
  const CommandResult fig1 = run(cli, "sweep --r-min 0 --r-max 3 --steps 31");
  const CommandResult fig2 = run(cli, "sweep --axis cosh_r --r-min 1 --r-max 10 --steps 10");
  if (fig1.code != 0 || fig2.code != 0) return {false, "sweep exited nonzero"};
  const std::vector<CsvRow> a = parse_csv(fig1.out, wf1);
  const std::vector<CsvRow> b = parse_csv(fig2.out, wf2);
  bool dec1 = wf1 && a.size() == 31, dec2 = wf2 && b.size() == 10;
  for (std::size_t i = 1; i < a.size(); ++i) dec1 = dec1 && a[i].log_negativity < a[i - 1].log_negativity;
  for (std::size_t i = 1; i < b.size(); ++i) dec2 = dec2 && b[i].mutual_information < b[i - 1].mutual_information;
  const bool above_one = std::all_of(b.begin(), b.end(), [](const CsvRow& r) { return r.mutual_information > 1.0; });
  const double tail_gap = b.empty() ? INFINITY : b.back().mutual_information - 1.0;

  double worst = 0.0;
  auto compare = [&](const char* file, const std::vector<CsvRow>& rows) {
    std::ifstream in(fixtures / file);
    const std::vector<unruh::FixtureRecord> gold = unruh::read_fixtures(in);
    if (gold.size() != rows.size()) return false;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      worst = std::max({worst, std::abs(gold[i].log_negativity - rows[i].log_negativity),
                        std::abs(gold[i].mutual_information - rows[i].mutual_information)});
    }
    return true;
  };
  const bool sized = compare("sweep_r_0_3.jsonl", a) && compare("sweep_cosh_1_10.jsonl", b);
  const bool pass = dec1 && dec2 && above_one && tail_gap < a.front().mutual_information - 1.0 && sized &&
                    worst <= kGoldenTol;
  return {pass, std::string("N decreasing: ") + (dec1 ? "yes" : "no") + ", I decreasing: " + (dec2 ? "yes" : "no") +
                    ", I(cosh=10)-1=" + g(tail_gap, 4) + ", max golden diff " + g(worst, 3)};
}

Outcome determinism(const std::string& cli) {
  const auto dir = std::filesystem::temp_directory_path() / ("unruh-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto a = dir / "a.csv";
  const auto b = dir / "b.csv";
  const std::string args = "sweep --r-min 0 --r-max 12 --steps 61 --out ";
  const int ca = run(cli, args + "'" + a.string() + "'").code;
  const int cb = run(cli, args + "'" + b.string() + "'").code;
  const std::string ta = slurp(a), tb = slurp(b);
  std::filesystem::remove_all(dir);
  const bool same = ca == 0 && cb == 0 && !ta.empty() && ta == tb;
  return {same, std::to_string(ta.size()) + " bytes, " + (same ? "identical" : "differ or failed")};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // <= 0: no runtime bound
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  std::string cli = "unruh";
  std::string fixtures = UNRUH_FIXTURE_DIR;
  app.add_option("--criterion", only, "Run a single criterion (1-8)")->check(CLI::Range(0, 8));
  app.add_option("--cli", cli, "Path to the unruh executable");
  app.add_option("--fixtures", fixtures, "Golden record directory");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "zero-acceleration exactness", kZeroAccelSeconds, [&] { return zero_acceleration(cli); }},
      {2, "infinite-acceleration limits", kLimitSeconds, [&] { return infinite_acceleration(cli); }},
      {3, "Sigma bounds", kSigmaSeconds, sigma_bounds_hold},
      {4, "oracle equivalence", kOracleSeconds, [&] { return oracle_equivalence(cli); }},
      {5, "purity identity", kPuritySeconds, purity_identity},
      {6, "PPT negativity presence", kPptSeconds, ppt_negativity},
      {7, "figure shapes", kShapeSeconds, [&] { return figure_shapes(cli, fixtures); }},
      {8, "determinism", 0.0, [&] { return determinism(cli); }},
  };

  bool all = true;
  for (const Criterion& c : criteria) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_seconds <= 0.0 || secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    all = all && pass;
    char timing[96];
    if (c.budget_seconds > 0.0) {
      std::snprintf(timing, sizeof timing, "%.3fs < %.0fs%s", secs, c.budget_seconds, in_time ? "" : " EXCEEDED");
    } else {
      std::snprintf(timing, sizeof timing, "%.3fs", secs);
    }
    std::cout << "criterion " << c.id << " [" << (pass ? "PASS" : "FAIL") << "] " << c.name << ": " << o.detail
              << " (" << timing << ")\n";
  }
  return all ? 0 : 1;
}
