#include "unruh/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unruh/errors.hpp"

namespace unruh {
namespace {

double frobenius(const std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

double max_off_diagonal(const std::vector<double>& a, std::size_t n) {
  double m = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) m = std::max(m, std::abs(a[p * n + q]));
  }
  return m;
}

}  // namespace

EigenSystem jacobi_eigensystem(std::vector<double> a, std::size_t n, const JacobiOptions& options) {
  if (a.size() != n * n) throw StructureError("matrix storage does not match dimension");
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (a[p * n + q] != a[q * n + p]) {
        const double defect = std::abs(a[p * n + q] - a[q * n + p]);
        const double mag = std::max(std::abs(a[p * n + q]), std::abs(a[q * n + p]));
        if (defect > 1e-13 * mag) throw StructureError("Jacobi input is not symmetric");
        a[q * n + p] = a[p * n + q];
      }
    }
  }

  EigenSystem out;
  out.dim = n;
  if (options.want_vectors) {
    out.vectors.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + i] = 1.0;
  }
  auto vec = [&](std::size_t k, std::size_t i) -> double& { return out.vectors[k * n + i]; };

  const double scale = frobenius(a);
  const double target = options.tolerance * scale;
  int sweep = 0;
  double off = max_off_diagonal(a, n);
  while (off > target) {
    if (sweep == options.max_sweeps) {
      throw NumericalError("Jacobi eigensolver did not converge after " + std::to_string(sweep) + " sweeps",
                           scale > 0.0 ? off / scale : off);
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double g = 100.0 * std::abs(apq);
        if (sweep > 4 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
          a[p * n + q] = a[q * n + p] = 0.0;
          continue;
        }
        const double h = aqq - app;
        double t;
        if (std::abs(h) + g == std::abs(h)) {
          t = apq / h;
        } else {
          const double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          if (akp == 0.0 && akq == 0.0) continue;
          const double np = akp - s * (akq + akp * tau);
          const double nq = akq + s * (akp - akq * tau);
          a[k * n + p] = a[p * n + k] = np;
          a[k * n + q] = a[q * n + k] = nq;
        }
        if (options.want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vp = vec(p, k);
            const double vq = vec(q, k);
            vec(p, k) = vp - s * (vq + vp * tau);
            vec(q, k) = vq + s * (vp - vq * tau);
          }
        }
      }
    }
    off = max_off_diagonal(a, n);
  }

  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a[i * n + i];
  out.residual = scale > 0.0 ? off / scale : 0.0;
  out.sweeps = sweep;
  return out;
}

Spectrum symmetric_eigenvalues(std::span<const double> matrix, std::size_t dim, const JacobiOptions& options) {
  JacobiOptions opts = options;
  opts.want_vectors = false;
  EigenSystem sys = jacobi_eigensystem(std::vector<double>(matrix.begin(), matrix.end()), dim, opts);
  Spectrum s;
  s.eigenvalues = std::move(sys.values);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  s.residual = sys.residual;
  s.sweeps = sys.sweeps;
  return s;
}

double von_neumann_entropy(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues) {
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

double trace_norm(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues) s += std::abs(l);
  return s;
}

}  // namespace unruh
