#pragma once

// Closed-form measures of the Bell state (|0>|0> + |1>|1>)/sqrt(2) with Rob's
// mode seen from an accelerated frame.
//
// With x = tanh^2 r and u = sech^2 r = 1 - x:
//   rho_AR = (u/2) sum_n x^n rho_n, block n spanned by |0,n>, |1,n+1>;
//   PT blocks pair |1,n>, |0,n+1>, plus the standalone |0,0> entry u/2;
//   lambda_pm^n = (u/4) [A_n +- sqrt(A_n^2 + 4 u x^(2n))],
//   A_n = n x^(n-1) u + x^(n+1)            (regular at r = 0);
//   joint spectrum  p_n = (u/2) x^n (1 + (n+1) u);
//   Rob's spectrum  q_n = (u/2) x^n + (u^2/2) n x^(n-1).

#include <cstdint>
#include <optional>
#include <string>

#include "unruh/kinematics.hpp"
#include "unruh/measures.hpp"
#include "unruh/series.hpp"

namespace unruh {

/// Beyond this r every measure is reported from its asymptotic form.
inline constexpr double kLargeSqueezing = 300.0;

struct BlockSpectrum {
  std::int64_t n = 0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double standalone = 0.0;  ///< u/2, shared by every block
};

BlockSpectrum pt_block_eigenvalues(const SqueezingParameter& sp, std::int64_t n);

/// Trace of PT block n: (u/2) x^n (n/sinh^2 r + tanh^2 r), regularized.
double pt_block_trace(const SqueezingParameter& sp, std::int64_t n);

struct SigmaBounds {
  double lower = 1.0;
  double upper = 2.0;
};

/// 1 <= Sigma < (2cosh^2 r + 2cosh r) / (2cosh^2 r) = 1 + 1/cosh r.
SigmaBounds sigma_bounds(const SqueezingParameter& sp);

/// Sigma via 1 + (2 sum|lambda_-| - u/2).
SeriesResult sigma_series(const SqueezingParameter& sp, double tol, const SummationLimits& limits = {});
/// Sigma summed term by term; for large r the excess over 1 drops below the
/// rounding of the sum.
SeriesResult sigma_series_direct(const SqueezingParameter& sp, double tol, const SummationLimits& limits = {});

/// sum_n |lambda_-^n|; the trace norm of the partial transpose is 1 + 2x this.
SeriesResult negative_eigenvalue_sum(const SqueezingParameter& sp, double tol,
                                     const SummationLimits& limits = {});

SeriesResult log_negativity(const SqueezingParameter& sp, double tol, const SummationLimits& limits = {});

/// sum_n p_n and sum_n q_n; both equal 1.
SeriesResult joint_normalization(const SqueezingParameter& sp, double tol, const SummationLimits& limits = {});
SeriesResult rob_normalization(const SqueezingParameter& sp, double tol, const SummationLimits& limits = {});

SeriesResult entropy_joint(const SqueezingParameter& sp, double tol, const SummationLimits& limits = {});
SeriesResult entropy_rob(const SqueezingParameter& sp, double tol, const SummationLimits& limits = {});

/// rho_A = (|0><0| + |1><1|)/2 for every r.
constexpr double entropy_alice() { return 1.0; }

/// I(N) = 1 - log2(tanh^2 r)/2 - (u/2) sum_n x^n D_n, the partial-sum
/// formula with D_n = m log2 m - l log2 l, m = 1 + n/sinh^2 r,
/// l = 1 + (n+1)/cosh^2 r. Requires r > 0.
SeriesResult mutual_information_partial_sum(const SqueezingParameter& sp, double tol,
                                            const SummationLimits& limits = {});

/// Below this r the partial-sum formula is not used for cross-validation.
inline constexpr double kPartialSumCheckMinR = 0.25;

struct MutualInformation {
  /// 1 + S(rho_R) - S(rho_AR); error is the sum of both entropy errors.
  SeriesResult value;
  std::optional<SeriesResult> partial_sum;
  std::optional<std::string> warning;
};

MutualInformation mutual_information(const SqueezingParameter& sp, double tol,
                                     const SummationLimits& limits = {});

/// Largest remainder bound, over the Sigma, negative-eigenvalue, joint-entropy
/// and Rob-entropy series, of the terms with index > n. Sizes Fock truncation
/// errors.
double measure_remainder_bound(const SqueezingParameter& sp, std::int64_t n);

/// Every field at tolerance `tol`.
MeasureBundle measures_analytic(const SqueezingParameter& sp, double tol, const SummationLimits& limits = {});

}  // namespace unruh
