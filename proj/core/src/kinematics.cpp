#include "unruh/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "unruh/errors.hpp"

namespace unruh {
namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void ModeSpec::validate() const {
  if (!positive_finite(freq_k) || !positive_finite(accel_a) || !positive_finite(speed_c)) {
    throw DomainError("mode spec requires finite positive |k|, a and c");
  }
  const double w = freq_k * speed_c / accel_a;
  if (!positive_finite(w)) {
    throw DomainError("mode spec gives non-finite or zero Omega = |k|c/a");
  }
}

double ModeSpec::omega() const { return freq_k * speed_c / accel_a; }

SqueezingParameter SqueezingParameter::from_r(double r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw DomainError("squeezing parameter r must be finite and >= 0, got " + std::to_string(r));
  }
  SqueezingParameter p;
  p.r_ = r;
  p.tanh_r_ = std::tanh(r);
  p.cosh_r_ = std::cosh(r);
  p.sinh_r_ = std::sinh(r);

  const double e = std::exp(-2.0 * r);  // in (0, 1]
  p.ln_cosh_r_ = r + std::log1p(e) - std::numbers::ln2;
  if (r == 0.0) {
    p.ln_tanh_r_ = -INFINITY;
  } else if (r < 0.5) {
    p.ln_tanh_r_ = std::log(p.tanh_r_);
  } else {
    p.ln_tanh_r_ = std::log1p(-e) - std::log1p(e);
  }

  if (r < 1.0) {
    p.tanh2_ = p.tanh_r_ * p.tanh_r_;
    p.sech2_ = 1.0 / (p.cosh_r_ * p.cosh_r_);
  } else {
    p.tanh2_ = std::exp(2.0 * p.ln_tanh_r_);
    p.sech2_ = 4.0 * e / ((1.0 + e) * (1.0 + e));
  }
  p.omega_ = r == 0.0 ? INFINITY : -2.0 * p.ln_tanh_r_ / (2.0 * std::numbers::pi);
  return p;
}

SqueezingParameter SqueezingParameter::from_omega(double omega) {
  if (!positive_finite(omega)) {
    throw DomainError("Omega must be finite and > 0");
  }
  // tanh r = exp(-pi Omega); r = atanh(t) = (log1p(t) - log(1 - t)) / 2.
  const double t = std::exp(-std::numbers::pi * omega);
  const double one_minus_t = -std::expm1(-std::numbers::pi * omega);
  const double r = 0.5 * (std::log1p(t) - std::log(one_minus_t));
  SqueezingParameter p = from_r(r);
  p.omega_ = omega;
  return p;
}

double SqueezingParameter::tanh2_pow(double k) const noexcept {
  if (k == 0.0) return 1.0;
  return std::exp(k * ln_tanh2());
}

SqueezingParameter squeezing_from_mode(const ModeSpec& spec) {
  spec.validate();
  return SqueezingParameter::from_omega(spec.omega());
}

NearHorizonMap near_horizon_accel(const NearHorizonSpec& spec) {
  if (!positive_finite(spec.mass_m) || !positive_finite(spec.coord_x)) {
    throw DomainError("near-horizon map requires finite m > 0 and x > 0");
  }
  NearHorizonMap out;
  out.a_coefficient = 1.0 / (4.0 * spec.mass_m);
  out.accel_parameter = 1.0 / out.a_coefficient;
  out.static_observer_accel = 1.0 / spec.coord_x;
  const double ax = out.a_coefficient * spec.coord_x;
  out.validity = ax * ax;
  const double radius = 2.0 * spec.mass_m + spec.coord_x * spec.coord_x / (8.0 * spec.mass_m);
  out.metric_factor = 1.0 - 2.0 * spec.mass_m / radius;
  return out;
}

}  // namespace unruh
