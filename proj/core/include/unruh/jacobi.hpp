#pragma once

// Cyclic Jacobi diagonalization of dense real symmetric matrices.
//
// Deterministic row-by-row sweep order; exactly-zero off-diagonal entries are
// skipped, so matrices that are block diagonal in a permuted basis converge in
// one sweep without the solver knowing the blocks.

#include <cstddef>
#include <span>
#include <vector>

namespace unruh {

struct JacobiOptions {
  /// Stop once max |a_pq| <= tolerance * ||A||_F.
  double tolerance = 1e-13;
  int max_sweeps = 64;
  bool want_vectors = false;
};

struct Spectrum {
  std::vector<double> eigenvalues;  ///< ascending
  double residual = 0.0;            ///< max |a_pq| / ||A||_F after the last sweep
  int sweeps = 0;
};

struct EigenSystem {
  std::size_t dim = 0;
  std::vector<double> values;   ///< unsorted, aligned with the vectors
  std::vector<double> vectors;  ///< vector k occupies [k*dim, (k+1)*dim)
  double residual = 0.0;
  int sweeps = 0;

  std::span<const double> vector(std::size_t k) const { return {vectors.data() + k * dim, dim}; }
};

/// `matrix` is row-major dim x dim and must be symmetric. Throws
/// NumericalError when max_sweeps pass without convergence.
EigenSystem jacobi_eigensystem(std::vector<double> matrix, std::size_t dim, const JacobiOptions& options = {});

Spectrum symmetric_eigenvalues(std::span<const double> matrix, std::size_t dim, const JacobiOptions& options = {});

/// -sum lambda log2 lambda over positive eigenvalues.
double von_neumann_entropy(std::span<const double> eigenvalues);

/// sum |lambda|.
double trace_norm(std::span<const double> eigenvalues);

}  // namespace unruh
