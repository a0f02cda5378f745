#pragma once

// Summation of the slowly decaying positive series that appear in every
// closed-form measure: sum_n tanh^(2n) r * g(n) for smooth g.
//
// Two regimes:
//  * direct: add terms until the current term is below tol/10 and a caller-
//    supplied rigorous bound on the remainder is below tol;
//  * Euler-Maclaurin: when the remainder bound predicts more terms than the
//    direct budget (cosh^2 r large), sum a short head directly and replace the
//    rest by an integral plus endpoint corrections.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace unruh {

struct SeriesResult {
  double value = 0.0;
  std::int64_t terms_used = 0;
  /// Upper bound (direct regime) or error estimate (Euler-Maclaurin regime)
  /// on |value - exact sum|.
  double tail_bound = 0.0;
  double requested_tol = 0.0;
  bool euler_maclaurin = false;
};

/// Tolerance could not be met; carries the partial result.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, SeriesResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const SeriesResult& partial() const noexcept { return partial_; }

 private:
  SeriesResult partial_;
};

struct SummationLimits {
  std::int64_t max_terms = 10'000'000;
  /// Above this predicted length the Euler-Maclaurin tail takes over.
  std::int64_t direct_budget = std::int64_t{1} << 20;
};

struct SeriesTerms {
  /// F(n); must accept real n >= 0 when `scale` > 0.
  std::function<double(double)> term;
  /// Bound on sum_{k > n} |F(k)|; n = -1 bounds the whole series.
  std::function<double(std::int64_t)> tail_bound;
  /// Length over which F varies smoothly (cosh^2 r). Zero disables the
  /// Euler-Maclaurin regime.
  double scale = 0.0;
  const char* name = "series";
};

SeriesResult sum_series(const SeriesTerms& series, double tol, const SummationLimits& limits = {});

/// Moments sum_{n >= k} n^j x^n for j = 0, 1, 2 with x = tanh^2 r and
/// 1 - x = sech^2 r, in closed form.
struct GeometricTail {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
};

GeometricTail geometric_tail(double x_pow_k, double x, double one_minus_x, std::int64_t k);

}  // namespace unruh
