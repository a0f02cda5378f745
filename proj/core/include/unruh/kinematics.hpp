#pragma once

// Mapping from physical scenario parameters to the squeezing parameter r.
//
// An inertial mode k seen from a frame with proper acceleration a splits into
// a two-mode squeezed state across the two Rindler wedges, with
//
//     cosh r = (1 - exp(-2 pi Omega))^(-1/2),   Omega = |k| c / a.
//
// Equivalently tanh r = exp(-pi Omega), which is the form used here: it stays
// accurate for both Omega -> infinity (r -> 0) and Omega -> 0 (r -> infinity).

namespace unruh {

/// Physical inputs of a single field mode observed by an accelerated detector.
/// Geometric units (c = 1) by default; SI inputs work as long as the three
/// values are mutually consistent, since only Omega survives.
struct ModeSpec {
  double freq_k = 1.0;   ///< |k|
  double accel_a = 1.0;  ///< proper acceleration a
  double speed_c = 1.0;  ///< signal speed c

  /// Throws DomainError unless all three values are finite and positive and
  /// Omega is finite and positive.
  void validate() const;
  double omega() const;
};

/// Omega below which the frame is flagged as effectively infinitely
/// accelerated.
inline constexpr double kEffectivelyInfiniteOmega = 1e-8;

/// The squeezing parameter r >= 0 together with the hyperbolic quantities every
/// downstream formula needs. Log-space values are always finite for r > 0, so
/// callers can work past the point where cosh r overflows (r ~ 710) or tanh r
/// rounds to 1 (r ~ 19).
class SqueezingParameter {
 public:
  static SqueezingParameter from_r(double r);
  static SqueezingParameter from_omega(double omega);

  double r() const noexcept { return r_; }
  double tanh_r() const noexcept { return tanh_r_; }
  double cosh_r() const noexcept { return cosh_r_; }
  double sinh_r() const noexcept { return sinh_r_; }
  double ln_cosh_r() const noexcept { return ln_cosh_r_; }
  double ln_tanh_r() const noexcept { return ln_tanh_r_; }  ///< -inf at r = 0

  /// tanh^2 r, the ratio of the geometric series over Fock levels.
  double tanh2() const noexcept { return tanh2_; }
  /// ln tanh^2 r; -inf at r = 0.
  double ln_tanh2() const noexcept { return 2.0 * ln_tanh_r_; }
  /// sech^2 r = 1 - tanh^2 r, computed without cancellation.
  double sech2() const noexcept { return sech2_; }

  /// Omega = -ln(tanh^2 r) / (2 pi); +inf at r = 0.
  double omega() const noexcept { return omega_; }
  bool effectively_infinite() const noexcept { return omega_ < kEffectivelyInfiniteOmega; }

  /// tanh^(2k) r for integer or real k >= 0, with tanh^0 = 1 even at r = 0.
  double tanh2_pow(double k) const noexcept;

 private:
  SqueezingParameter() = default;

  double r_ = 0.0;
  double tanh_r_ = 0.0;
  double cosh_r_ = 1.0;
  double sinh_r_ = 0.0;
  double ln_cosh_r_ = 0.0;
  double ln_tanh_r_ = 0.0;
  double tanh2_ = 0.0;
  double sech2_ = 1.0;
  double omega_ = 0.0;
};

SqueezingParameter squeezing_from_mode(const ModeSpec& spec);

/// Near-horizon Schwarzschild geometry, radial part only.
/// R - 2m = x^2 / (8m) turns 1 - 2m/R into (Ax)^2 / (1 + (Ax)^2), A = 1/(4m).
struct NearHorizonSpec {
  double mass_m = 1.0;
  double coord_x = 0.0;
};

struct NearHorizonMap {
  double a_coefficient = 0.0;  ///< A = 1/(4m)
  /// a = 1/A = 4m, transcribed as stated for the Rindler form
  /// ds^2 = -(Ax)^2 dT^2 + dx^2.
  double accel_parameter = 0.0;
  /// Proper acceleration of a static observer at x in that metric, 1/x. A
  /// different reading of "acceleration" from accel_parameter; reported
  /// alongside, not substituted.
  double static_observer_accel = 0.0;
  double validity = 0.0;       ///< (A x)^2; the Rindler form needs this << 1
  double metric_factor = 0.0;  ///< exact 1 - 2m/R at R = 2m + x^2/(8m)
};

NearHorizonMap near_horizon_accel(const NearHorizonSpec& spec);

}  // namespace unruh
