#pragma once

// Brute-force reference path in a truncated Fock basis.
//
// The tripartite pure state (Alice's qubit, Rob's region-I mode, the region-II
// mode) is built from the squeezed-vacuum and one-particle expansions, reduced
// by explicit partial traces into dense matrices, and diagonalized with the
// in-repo Jacobi solver. Nothing here uses the block structure the closed forms
// rely on; it only shows up in the data.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "unruh/jacobi.hpp"
#include "unruh/kinematics.hpp"
#include "unruh/measures.hpp"

namespace unruh {

/// Largest Fock cutoff accepted; the joint matrix has 2 (n_max + 2) rows.
inline constexpr std::int64_t kMaxOracleCutoff = 2000;

/// c_n = tanh^n r / cosh r, n = 0..n_max: |0_k>_M in Rindler pairs |n>_I |n>_II.
std::vector<double> build_vacuum_expansion(const SqueezingParameter& sp, std::int64_t n_max);

/// d_n = tanh^n r sqrt(n+1) / cosh^2 r on |n+1>_I |n>_II, n = 0..n_max.
std::vector<double> build_one_particle_expansion(const SqueezingParameter& sp, std::int64_t n_max);

struct TripartiteKet {
  int alice = 0;
  std::int64_t n_region_i = 0;
  std::int64_t n_region_ii = 0;

  friend bool operator==(const TripartiteKet&, const TripartiteKet&) = default;
};

struct TripartiteState {
  double r = 0.0;
  std::int64_t n_max = 0;
  /// Nonzero amplitudes only.
  std::vector<std::pair<TripartiteKet, double>> amplitudes;

  std::int64_t region_i_dim() const { return n_max + 2; }
  std::int64_t region_ii_dim() const { return n_max + 1; }
  double amplitude(const TripartiteKet& ket) const;
  double norm_squared() const;
};

/// (|0>_A |0_k>_M + |1>_A |1_k>_M) / sqrt(2) in the truncated Rindler basis.
TripartiteState build_tripartite_state(const SqueezingParameter& sp, std::int64_t n_max);

/// Which factors a density matrix lives on.
enum class Subsystems { AliceRob, Rob, Alice, RegionII };

struct BasisLabel {
  int alice = -1;        ///< -1 when Alice is not part of the matrix
  std::int64_t n = -1;   ///< -1 when no Fock factor is present
};

/// Dense real symmetric density matrix; index = alice * fock_dim + n.
class DensityMatrix {
 public:
  DensityMatrix(Subsystems content, std::size_t fock_dim);

  Subsystems content() const { return content_; }
  bool has_alice() const { return content_ == Subsystems::AliceRob || content_ == Subsystems::Alice; }
  std::size_t fock_dim() const { return fock_dim_; }
  std::size_t dim() const { return dim_; }

  std::size_t index(int alice, std::int64_t n) const;
  BasisLabel label(std::size_t i) const;
  std::vector<BasisLabel> basis_labels() const;

  double& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  std::span<const double> entries() const { return entries_; }

  double trace() const;
  double max_abs() const;
  /// max |a_ij - a_ji|.
  double hermiticity_defect() const;

 private:
  Subsystems content_;
  std::size_t fock_dim_;
  std::size_t dim_;
  std::vector<double> entries_;
};

/// rho_AR over (alice, n_I).
DensityMatrix trace_out_region_ii(const TripartiteState& state);
/// rho_RII over n_II.
DensityMatrix trace_out_alice_and_region_i(const TripartiteState& state);
/// rho_R from rho_AR. StructureError unless the input is an Alice-Rob matrix.
DensityMatrix trace_out_alice(const DensityMatrix& rho);
/// rho_A from rho_AR. StructureError unless the input is an Alice-Rob matrix.
DensityMatrix trace_out_rob(const DensityMatrix& rho);
/// <a n| rho^T |b m> = <b n| rho |a m>.
DensityMatrix partial_transpose_alice(const DensityMatrix& rho);

Spectrum symmetric_eigenvalues(const DensityMatrix& rho, const JacobiOptions& options = {});
EigenSystem eigensystem(const DensityMatrix& rho, const JacobiOptions& options = {});

/// Bound on how far any oracle measure at cutoff n_max can sit from the
/// untruncated value.
double truncation_bound(const SqueezingParameter& sp, std::int64_t n_max);

/// Smallest cutoff whose truncation bound is <= tol. DomainError if that
/// needs more than kMaxOracleCutoff.
std::int64_t default_n_max(const SqueezingParameter& sp, double tol);

struct OracleReport {
  MeasureBundle bundle;
  double entropy_region_ii = 0.0;
  double min_eigenvalue_joint = 0.0;
  double truncation_bound = 0.0;
  double max_residual = 0.0;
  /// Partial transpose with eigenvectors, kept for per-block comparison.
  EigenSystem pt_system;
  std::vector<BasisLabel> pt_labels;
};

OracleReport oracle_report(const SqueezingParameter& sp, std::int64_t n_max);
MeasureBundle measures_numeric(const SqueezingParameter& sp, std::int64_t n_max);

/// Oracle eigenpair of the partial transpose attributed to PT block n by the
/// basis label carrying most of its eigenvector weight.
struct OracleBlock {
  std::int64_t n = 0;
  std::vector<double> eigenvalues;  ///< descending
};

/// Groups the PT spectrum by dominant basis label: |1,n> and |0,n+1> belong to
/// block n, |0,0> is the standalone entry (returned as block -1).
std::vector<OracleBlock> group_pt_spectrum(const OracleReport& report);

}  // namespace unruh
