#include "unruh/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "unruh/errors.hpp"

namespace unruh {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kLog2e = std::numbers::log2e;
// e * E1(1) = integral_0^inf exp(-y) / (1 + y) dy.
constexpr double kGompertz = 0.59634736232319407434;

void check_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("tolerance must be finite and > 0");
}

bool is_large(const SqueezingParameter& sp) { return sp.r() > kLargeSqueezing; }

double inv_cosh(const SqueezingParameter& sp) { return std::exp(-sp.ln_cosh_r()); }

double neg_xlog2x(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

SeriesResult limit_result(double value, const SqueezingParameter& sp, double tol) {
  SeriesResult out;
  out.value = value;
  out.terms_used = 1;
  out.tail_bound = inv_cosh(sp);
  out.requested_tol = tol;
  return out;
}

// Asymptotic entropy of both S(rho_AR) and S(rho_R) once cosh^2 r is huge:
// ln(2 cosh^2 r) + 1 - e E1(1) / 2, in bits.
double asymptotic_entropy(const SqueezingParameter& sp) {
  return (kLn2 + 2.0 * sp.ln_cosh_r() + 1.0 - kGompertz / 2.0) / kLn2;
}

// When tanh^2 r is 0 (r = 0, or r below ~1e-154) every series stops after
// n = 1 and the exact remainder is cheap.
std::function<double(std::int64_t)> terminating_tail(std::function<double(double)> term) {
  return [term = std::move(term)](std::int64_t n) {
    double t = 0.0;
    for (std::int64_t k = n + 1; k <= 1; ++k) t += std::abs(term(static_cast<double>(k)));
    return t;
  };
}

GeometricTail tail_moments(const SqueezingParameter& sp, std::int64_t n) {
  const std::int64_t k = n + 1;
  return geometric_tail(sp.tanh2_pow(static_cast<double>(k)), sp.tanh2(), sp.sech2(), k);
}

// Sum over n > N of c * x^n (c0 + c1 n + c2 n^2).
std::function<double(std::int64_t)> quadratic_tail(const SqueezingParameter& sp, double c, double c0, double c1,
                                                   double c2) {
  return [sp, c, c0, c1, c2](std::int64_t n) {
    const GeometricTail g = tail_moments(sp, n);
    return c * (c0 * g.m0 + c1 * g.m1 + c2 * g.m2);
  };
}

// A_n and 4 u x^(2n) in the regularized form, valid at r = 0.
struct BlockParts {
  double a = 0.0;
  double b = 0.0;
};

BlockParts block_parts(const SqueezingParameter& sp, double n) {
  const double u = sp.sech2();
  BlockParts p;
  p.a = (n == 0.0 ? 0.0 : n * sp.tanh2_pow(n - 1.0) * u) + sp.tanh2_pow(n + 1.0);
  p.b = 4.0 * u * sp.tanh2_pow(2.0 * n);
  return p;
}

double sigma_term(const SqueezingParameter& sp, double n) {
  const double u = sp.sech2();
  const double x = sp.tanh2();
  if (x == 0.0) {
    const BlockParts p = block_parts(sp, n);
    return 0.5 * u * std::sqrt(p.a * p.a + p.b);
  }
  const double a = n * u / x + x;
  return 0.5 * u * sp.tanh2_pow(n) * std::sqrt(a * a + 4.0 * u);
}

// |lambda_-^n| / u.
double neg_term_scaled(const SqueezingParameter& sp, double n) {
  const double u = sp.sech2();
  const double x = sp.tanh2();
  if (x == 0.0) {
    const BlockParts p = block_parts(sp, n);
    const double root = std::sqrt(p.a * p.a + p.b);
    return p.b == 0.0 ? 0.0 : 0.25 * p.b / (p.a + root);
  }
  const double a = n * u / x + x;
  return sp.tanh2_pow(n) * u / (a + std::sqrt(a * a + 4.0 * u));
}

double joint_eigenvalue(const SqueezingParameter& sp, double n) {
  const double u = sp.sech2();
  return 0.5 * u * sp.tanh2_pow(n) * (1.0 + (n + 1.0) * u);
}

double rob_eigenvalue(const SqueezingParameter& sp, double n) {
  const double u = sp.sech2();
  if (n == 0.0) return 0.5 * u;
  return 0.5 * u * sp.tanh2_pow(n - 1.0) * (sp.tanh2() + n * u);
}

SeriesTerms make_series(const SqueezingParameter& sp, const char* name, std::function<double(double)> term,
                        std::function<double(std::int64_t)> tail) {
  SeriesTerms s;
  s.name = name;
  if (sp.tanh2() == 0.0) {
    s.tail_bound = terminating_tail(term);
  } else {
    s.tail_bound = std::move(tail);
    s.scale = 1.0 / sp.sech2();
  }
  s.term = std::move(term);
  return s;
}

SeriesTerms sigma_terms(const SqueezingParameter& sp) {
  const double u = sp.sech2();
  const double x = sp.tanh2();
  return make_series(
      sp, "sigma", [sp](double n) { return sigma_term(sp, n); },
      x > 0.0 ? quadratic_tail(sp, 0.5 * u, x + 2.0 * std::sqrt(u), u / x, 0.0) : nullptr);
}

// Scaled by 1/u so the sum stays representable when u^2 underflows.
SeriesTerms neg_terms(const SqueezingParameter& sp) {
  const double u = sp.sech2();
  const double x = sp.tanh2();
  std::function<double(std::int64_t)> tail;
  if (x > 0.0) {
    // |lambda_-^k| / u <= x^k u / (2 a_k), a_k increasing in k.
    tail = [sp, u, x](std::int64_t n) {
      const double k = static_cast<double>(n + 1);
      const double a = k * u / x + x;
      return tail_moments(sp, n).m0 * u / (2.0 * a);
    };
  }
  return make_series(sp, "negative eigenvalues", [sp](double n) { return neg_term_scaled(sp, n); }, tail);
}

SeriesTerms joint_entropy_terms(const SqueezingParameter& sp) {
  const double u = sp.sech2();
  // -ln p_n <= n |ln x| + ln(2/u)
  const double lam = -sp.ln_tanh2();
  const double big_l = std::log(2.0 / u);
  return make_series(
      sp, "joint entropy", [sp](double n) { return neg_xlog2x(joint_eigenvalue(sp, n)); },
      quadratic_tail(sp, 0.5 * u * kLog2e, (1.0 + u) * big_l, (1.0 + u) * lam + u * big_l, u * lam));
}

SeriesTerms rob_entropy_terms(const SqueezingParameter& sp) {
  const double u = sp.sech2();
  const double x = sp.tanh2();
  // -ln q_n <= n |ln x| + ln(2/u) as well.
  const double lam = -sp.ln_tanh2();
  const double big_l = std::log(2.0 / u);
  const double alpha = x > 0.0 ? u / x : 0.0;
  return make_series(
      sp, "Rob entropy", [sp](double n) { return neg_xlog2x(rob_eigenvalue(sp, n)); },
      x > 0.0 ? quadratic_tail(sp, 0.5 * u * kLog2e, big_l, lam + alpha * big_l, alpha * lam) : nullptr);
}

void check_normalization(const SeriesResult& norm, double tol, const char* what) {
  if (std::abs(norm.value - 1.0) > norm.tail_bound + tol) {
    throw NumericalError(std::string(what) + " spectrum does not sum to 1", std::abs(norm.value - 1.0));
  }
}

}  // namespace

double MeasureBundle::max_error() const {
  return std::max({log_negativity.error, sigma.error, entropy_joint.error, entropy_rob.error, entropy_alice.error,
                   mutual_information.error});
}

BlockSpectrum pt_block_eigenvalues(const SqueezingParameter& sp, std::int64_t n) {
  if (n < 0) throw DomainError("block index must be >= 0");
  const double u = sp.sech2();
  const double x = sp.tanh2();
  const double nd = static_cast<double>(n);
  BlockSpectrum out;
  out.n = n;
  out.standalone = 0.5 * u;
  if (x == 0.0) {
    const BlockParts p = block_parts(sp, nd);
    const double root = std::sqrt(p.a * p.a + p.b);
    out.lambda_plus = 0.25 * u * (p.a + root);
    out.lambda_minus = p.b == 0.0 ? 0.0 : -0.25 * u * p.b / (p.a + root);
    return out;
  }
  // Factor x^n out of A_n and sqrt(B_n) so that the small eigenvalue keeps
  // full relative precision and does not underflow before x^n does.
  const double xn = sp.tanh2_pow(nd);
  const double a = nd * u / x + x;
  const double root = std::sqrt(a * a + 4.0 * u);
  out.lambda_plus = 0.25 * u * xn * (a + root);
  out.lambda_minus = -u * (u * xn / (a + root));
  return out;
}

double pt_block_trace(const SqueezingParameter& sp, std::int64_t n) {
  if (n < 0) throw DomainError("block index must be >= 0");
  return 0.5 * sp.sech2() * block_parts(sp, static_cast<double>(n)).a;
}

SigmaBounds sigma_bounds(const SqueezingParameter& sp) {
  return SigmaBounds{1.0, 1.0 + inv_cosh(sp)};
}

SeriesResult sigma_series(const SqueezingParameter& sp, double tol, const SummationLimits& limits) {
  check_tol(tol);
  if (is_large(sp)) return limit_result(1.0, sp, tol);
  // Sigma = (1 + x)/2 + 2 sum|lambda_-| = 1 + (2 sum|lambda_-| - u/2); keeps
  // the excess over 1 when it is below the rounding of the direct sum.
  SeriesResult out = negative_eigenvalue_sum(sp, tol / 2.0, limits);
  out.value = 1.0 + (2.0 * out.value - 0.5 * sp.sech2());
  out.tail_bound *= 2.0;
  out.requested_tol = tol;
  return out;
}

SeriesResult sigma_series_direct(const SqueezingParameter& sp, double tol, const SummationLimits& limits) {
  check_tol(tol);
  if (is_large(sp)) return limit_result(1.0, sp, tol);
  return sum_series(sigma_terms(sp), tol, limits);
}

SeriesResult negative_eigenvalue_sum(const SqueezingParameter& sp, double tol, const SummationLimits& limits) {
  check_tol(tol);
  if (is_large(sp)) return limit_result(0.5 * sp.sech2() * kGompertz, sp, tol);
  const double u = sp.sech2();
  // The scaled series is O(1); a tolerance above 1e-9 would return a value
  // that is within tol but has no correct digits.
  SeriesResult out = sum_series(neg_terms(sp), std::min(tol / u, 1e-9), limits);
  out.value *= u;
  out.tail_bound *= u;
  out.requested_tol = tol;
  return out;
}

SeriesResult log_negativity(const SqueezingParameter& sp, double tol, const SummationLimits& limits) {
  check_tol(tol);
  if (is_large(sp)) {
    SeriesResult out = limit_result(sp.sech2() * kGompertz * kLog2e, sp, tol);
    out.tail_bound = std::log2(1.0 + inv_cosh(sp));
    return out;
  }
  // d/dv log2(1 + 2v) <= 2 / ln 2 < 3.
  SeriesResult neg = negative_eigenvalue_sum(sp, tol / 3.0, limits);
  SeriesResult out = neg;
  out.value = std::log1p(2.0 * neg.value) * kLog2e;
  out.tail_bound = 2.0 * kLog2e * neg.tail_bound;
  out.requested_tol = tol;
  return out;
}

SeriesResult joint_normalization(const SqueezingParameter& sp, double tol, const SummationLimits& limits) {
  check_tol(tol);
  if (is_large(sp)) return limit_result(1.0, sp, tol);
  const double u = sp.sech2();
  auto series = make_series(
      sp, "joint normalization", [sp](double n) { return joint_eigenvalue(sp, n); },
      quadratic_tail(sp, 0.5 * u, 1.0 + u, u, 0.0));
  return sum_series(series, tol, limits);
}

SeriesResult rob_normalization(const SqueezingParameter& sp, double tol, const SummationLimits& limits) {
  check_tol(tol);
  if (is_large(sp)) return limit_result(1.0, sp, tol);
  const double u = sp.sech2();
  const double x = sp.tanh2();
  auto series = make_series(
      sp, "rob normalization", [sp](double n) { return rob_eigenvalue(sp, n); },
      x > 0.0 ? quadratic_tail(sp, 0.5 * u, 1.0, u / x, 0.0) : nullptr);
  return sum_series(series, tol, limits);
}

SeriesResult entropy_joint(const SqueezingParameter& sp, double tol, const SummationLimits& limits) {
  check_tol(tol);
  if (is_large(sp)) return limit_result(asymptotic_entropy(sp), sp, tol);
  check_normalization(joint_normalization(sp, tol, limits), tol, "joint");
  return sum_series(joint_entropy_terms(sp), tol, limits);
}

SeriesResult entropy_rob(const SqueezingParameter& sp, double tol, const SummationLimits& limits) {
  check_tol(tol);
  if (is_large(sp)) return limit_result(asymptotic_entropy(sp), sp, tol);
  check_normalization(rob_normalization(sp, tol, limits), tol, "Rob");
  return sum_series(rob_entropy_terms(sp), tol, limits);
}

double measure_remainder_bound(const SqueezingParameter& sp, std::int64_t n) {
  if (is_large(sp)) return inv_cosh(sp);
  const double u = sp.sech2();
  return std::max({sigma_terms(sp).tail_bound(n), u * neg_terms(sp).tail_bound(n),
                   joint_entropy_terms(sp).tail_bound(n), rob_entropy_terms(sp).tail_bound(n)});
}

SeriesResult mutual_information_partial_sum(const SqueezingParameter& sp, double tol,
                                            const SummationLimits& limits) {
  check_tol(tol);
  if (sp.r() == 0.0) throw DomainError("partial-sum mutual information formula is singular at r = 0");
  if (is_large(sp)) return limit_result(1.0, sp, tol);
  const double u = sp.sech2();
  const double x = sp.tanh2();
  const double alpha = u / x;
  auto term = [sp, u, alpha](double n) {
    const double m = 1.0 + n * alpha;
    const double l = 1.0 + (n + 1.0) * u;
    return 0.5 * u * sp.tanh2_pow(n) * (m * std::log2(m) - l * std::log2(l));
  };
  auto series = make_series(sp, "mutual information partial sum", term,
                            quadratic_tail(sp, 0.5 * u * u * kLog2e, 1.0 + alpha, alpha * (2.0 + alpha),
                                           alpha * alpha));
  SeriesResult sum = sum_series(series, tol, limits);
  SeriesResult out = sum;
  out.value = 1.0 - sp.ln_tanh_r() * kLog2e - sum.value;
  return out;
}

namespace {

MutualInformation combine_mutual_information(const SqueezingParameter& sp, const SeriesResult& s_joint,
                                             const SeriesResult& s_rob, double tol,
                                             const SummationLimits& limits) {
  MutualInformation mi;
  mi.value.value = entropy_alice() + s_rob.value - s_joint.value;
  mi.value.tail_bound = s_rob.tail_bound + s_joint.tail_bound;
  mi.value.terms_used = std::max(s_rob.terms_used, s_joint.terms_used);
  mi.value.euler_maclaurin = s_rob.euler_maclaurin || s_joint.euler_maclaurin;
  mi.value.requested_tol = tol;
  if (is_large(sp)) {
    mi.value = limit_result(1.0, sp, tol);
    return mi;
  }
  if (sp.r() >= kPartialSumCheckMinR) {
    try {
      mi.partial_sum = mutual_information_partial_sum(sp, tol, limits);
      const double slack = 64.0 * std::numeric_limits<double>::epsilon() * (s_rob.value + s_joint.value + 2.0);
      const double diff = std::abs(mi.partial_sum->value - mi.value.value);
      if (diff > mi.value.tail_bound + mi.partial_sum->tail_bound + slack) {
        mi.warning = "partial-sum mutual information differs from the entropy route by " + std::to_string(diff);
      }
    } catch (const ConvergenceError& e) {
      mi.warning = std::string("partial-sum cross-check did not converge: ") + e.what();
    }
  }
  return mi;
}

}  // namespace

MutualInformation mutual_information(const SqueezingParameter& sp, double tol, const SummationLimits& limits) {
  check_tol(tol);
  const SeriesResult s_joint = entropy_joint(sp, tol / 2.0, limits);
  const SeriesResult s_rob = entropy_rob(sp, tol / 2.0, limits);
  return combine_mutual_information(sp, s_joint, s_rob, tol, limits);
}

MeasureBundle measures_analytic(const SqueezingParameter& sp, double tol, const SummationLimits& limits) {
  check_tol(tol);
  MeasureBundle b;
  b.r = sp.r();

  const SeriesResult sigma = sigma_series(sp, tol, limits);
  const SeriesResult neg_n = log_negativity(sp, tol, limits);
  const SeriesResult s_joint = entropy_joint(sp, tol / 2.0, limits);
  const SeriesResult s_rob = entropy_rob(sp, tol / 2.0, limits);
  const MutualInformation mi = combine_mutual_information(sp, s_joint, s_rob, tol, limits);

  const SigmaBounds bounds = sigma_bounds(sp);
  b.sigma = {sigma.value, sigma.tail_bound};
  b.sigma_lower = bounds.lower;
  b.sigma_upper = bounds.upper;
  b.log_negativity = {neg_n.value, neg_n.tail_bound};
  b.entropy_joint = {s_joint.value, s_joint.tail_bound};
  b.entropy_rob = {s_rob.value, s_rob.tail_bound};
  b.entropy_alice = {entropy_alice(), 0.0};
  b.mutual_information = {mi.value.value, mi.value.tail_bound};
  b.terms_used = std::max({sigma.terms_used, neg_n.terms_used, s_joint.terms_used, s_rob.terms_used});
  b.n_max = b.terms_used - 1;
  if (mi.warning) b.warnings.push_back(*mi.warning);
  return b;
}

}  // namespace unruh
