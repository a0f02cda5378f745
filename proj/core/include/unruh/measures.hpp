#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace unruh {

/// A value with an absolute error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Every entanglement and correlation measure of the Alice/Rob state at one
/// squeezing value. Produced both by the closed-form series and by the dense
/// Fock-space oracle, so the two can be compared field by field.
struct MeasureBundle {
  double r = 0.0;
  Estimate log_negativity;
  Estimate sigma;
  double sigma_lower = 1.0;
  double sigma_upper = 2.0;
  Estimate entropy_joint;  ///< S(rho_AR)
  Estimate entropy_rob;    ///< S(rho_R), Rob restricted to region I
  Estimate entropy_alice;  ///< S(rho_A), identically 1
  Estimate mutual_information;
  std::int64_t terms_used = 0;
  /// Fock cutoff for oracle bundles; last directly summed index otherwise.
  std::int64_t n_max = 0;
  std::vector<std::string> warnings;

  /// Largest error estimate across all fields.
  double max_error() const;
};

}  // namespace unruh
