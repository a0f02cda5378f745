#include "unruh/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace unruh {
namespace {

// Neumaier compensated sum; head sums run to ~1e6 terms.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
    abs_ += std::abs(v);
  }
  double value() const { return sum_ + comp_; }
  double abs_total() const { return abs_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_ = 0.0;
};

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::int64_t predict_length(const SeriesTerms& s, double tol, std::int64_t cap) {
  if (s.tail_bound(-1) <= tol) return 0;
  std::int64_t n = 16;
  while (n < cap && !(s.tail_bound(n) <= tol)) n *= 2;
  return n;
}

SeriesResult sum_direct(const SeriesTerms& s, double tol, const SummationLimits& limits) {
  CompensatedSum acc;
  SeriesResult out;
  out.requested_tol = tol;
  for (std::int64_t n = 0; n < limits.max_terms; ++n) {
    const double f = s.term(static_cast<double>(n));
    acc.add(f);
    if (std::abs(f) < tol / 10.0) {
      const double rounding = 4.0 * kEps * acc.abs_total();
      const double tail = s.tail_bound(n);
      if (tail + rounding <= tol) {
        out.value = acc.value();
        out.terms_used = n + 1;
        out.tail_bound = tail + rounding;
        return out;
      }
      if (rounding >= tol) {
        out.value = acc.value();
        out.terms_used = n + 1;
        out.tail_bound = tail + rounding;
        throw ConvergenceError(std::string(s.name) + ": tolerance is below the rounding error of the sum", out);
      }
    }
  }
  out.value = acc.value();
  out.terms_used = limits.max_terms;
  out.tail_bound = s.tail_bound(limits.max_terms - 1);
  throw ConvergenceError(std::string(s.name) + ": tolerance not reached within the term cap", out);
}

// Fourth-order central differences with step h.
struct Derivatives {
  double d1 = 0.0;
  double d3 = 0.0;
};

Derivatives central_derivatives(const std::function<double(double)>& f, double t, double h) {
  const double fp1 = f(t + h), fm1 = f(t - h), fp2 = f(t + 2 * h), fm2 = f(t - 2 * h);
  Derivatives d;
  d.d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
  d.d3 = (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * h * h * h);
  return d;
}

double fourth_difference(const std::function<double(double)>& f, double t, double h) {
  return (f(t + 2 * h) - 4.0 * f(t + h) + 6.0 * f(t) - 4.0 * f(t - h) + f(t - 2 * h)) / (h * h * h * h);
}

SeriesResult sum_euler_maclaurin(const SeriesTerms& s, double tol) {
  using boost::math::quadrature::gauss_kronrod;
  const double scale = s.scale;
  const auto head_len = static_cast<std::int64_t>(std::clamp(scale / 32.0, 64.0, 4096.0));
  const double start = static_cast<double>(head_len);
  const double h = std::clamp(scale / 256.0, 1.0, start / 3.0);

  CompensatedSum head;
  for (std::int64_t n = 0; n < head_len; ++n) head.add(s.term(static_cast<double>(n)));

  // Integrals over [start, inf) in the stretched variable t = start + scale*y,
  // where the integrand decays like exp(-y).
  const auto stretched = [&](auto&& g) {
    return [&, g](double y) { return scale * g(start + scale * y); };
  };
  double err_main = 0.0;
  double l1_main = 0.0;
  const double integral = gauss_kronrod<double, 61>::integrate(
      stretched([&](double t) { return s.term(t); }), 0.0, std::numeric_limits<double>::infinity(), 10,
      1e-14, &err_main, &l1_main);

  double err_rem = 0.0;
  const double fourth_l1 = gauss_kronrod<double, 31>::integrate(
      stretched([&](double t) { return std::abs(fourth_difference(s.term, t, h)); }), 0.0,
      std::numeric_limits<double>::infinity(), 8, 1e-6, &err_rem);

  const Derivatives dh = central_derivatives(s.term, start, h);
  const Derivatives d2h = central_derivatives(s.term, start, 2.0 * h);
  const double endpoint = s.term(start) / 2.0 - dh.d1 / 12.0 + dh.d3 / 720.0;
  const double fd_err = std::abs(dh.d1 - d2h.d1) / 12.0 + std::abs(dh.d3 - d2h.d3) / 720.0;

  SeriesResult out;
  out.requested_tol = tol;
  out.euler_maclaurin = true;
  out.terms_used = head_len;
  out.value = head.value() + integral + endpoint;
  out.tail_bound = std::abs(err_main) + 2.0 * (fourth_l1 + std::abs(err_rem)) / 720.0 + fd_err +
                   4.0 * kEps * (head.abs_total() + l1_main);
  if (!(out.tail_bound <= tol)) {
    throw ConvergenceError(std::string(s.name) + ": Euler-Maclaurin tail above tolerance", out);
  }
  return out;
}

}  // namespace

SeriesResult sum_series(const SeriesTerms& series, double tol, const SummationLimits& limits) {
  const std::int64_t predicted = predict_length(series, tol, limits.max_terms);
  if (series.scale > 0.0 && predicted > limits.direct_budget) {
    return sum_euler_maclaurin(series, tol);
  }
  return sum_direct(series, tol, limits);
}

GeometricTail geometric_tail(double x_pow_k, double x, double one_minus_x, std::int64_t k) {
  const double kd = static_cast<double>(k);
  const double s0 = 1.0 / one_minus_x;
  const double s1 = x * s0 * s0;
  const double s2 = x * (1.0 + x) * s0 * s0 * s0;
  GeometricTail g;
  g.m0 = x_pow_k * s0;
  g.m1 = x_pow_k * (kd * s0 + s1);
  g.m2 = x_pow_k * (kd * kd * s0 + 2.0 * kd * s1 + s2);
  return g;
}

}  // namespace unruh
