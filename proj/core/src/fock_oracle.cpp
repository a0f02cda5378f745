#include "unruh/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "unruh/analytic.hpp"
#include "unruh/errors.hpp"

namespace unruh {
namespace {

void check_cutoff(std::int64_t n_max) {
  if (n_max < 0) throw DomainError("Fock cutoff must be >= 0");
  if (n_max > kMaxOracleCutoff) {
    throw DomainError("Fock cutoff " + std::to_string(n_max) + " exceeds the dense oracle limit " +
                      std::to_string(kMaxOracleCutoff));
  }
}

void require_alice_rob(const DensityMatrix& rho, const char* op) {
  if (rho.content() != Subsystems::AliceRob) {
    throw StructureError(std::string(op) + " needs a matrix over Alice x Rob");
  }
}

std::size_t alice_dim(Subsystems s) {
  return (s == Subsystems::AliceRob || s == Subsystems::Alice) ? 2 : 1;
}

}  // namespace

std::vector<double> build_vacuum_expansion(const SqueezingParameter& sp, std::int64_t n_max) {
  check_cutoff(n_max);
  std::vector<double> c(static_cast<std::size_t>(n_max + 1));
  double t_pow = 1.0;
  for (auto& v : c) {
    v = t_pow / sp.cosh_r();
    t_pow *= sp.tanh_r();
  }
  return c;
}

std::vector<double> build_one_particle_expansion(const SqueezingParameter& sp, std::int64_t n_max) {
  check_cutoff(n_max);
  std::vector<double> d(static_cast<std::size_t>(n_max + 1));
  const double cosh2 = sp.cosh_r() * sp.cosh_r();
  double t_pow = 1.0;
  for (std::size_t n = 0; n < d.size(); ++n) {
    d[n] = t_pow * std::sqrt(static_cast<double>(n + 1)) / cosh2;
    t_pow *= sp.tanh_r();
  }
  return d;
}

double TripartiteState::amplitude(const TripartiteKet& ket) const {
  for (const auto& [k, a] : amplitudes) {
    if (k == ket) return a;
  }
  return 0.0;
}

double TripartiteState::norm_squared() const {
  double s = 0.0;
  for (const auto& [k, a] : amplitudes) s += a * a;
  return s;
}

TripartiteState build_tripartite_state(const SqueezingParameter& sp, std::int64_t n_max) {
  const std::vector<double> c = build_vacuum_expansion(sp, n_max);
  const std::vector<double> d = build_one_particle_expansion(sp, n_max);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  TripartiteState state;
  state.r = sp.r();
  state.n_max = n_max;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    const auto i = static_cast<std::size_t>(n);
    if (c[i] != 0.0) state.amplitudes.push_back({{0, n, n}, inv_sqrt2 * c[i]});
    if (d[i] != 0.0) state.amplitudes.push_back({{1, n + 1, n}, inv_sqrt2 * d[i]});
  }
  return state;
}

DensityMatrix::DensityMatrix(Subsystems content, std::size_t fock_dim)
    : content_(content),
      fock_dim_(content == Subsystems::Alice ? 0 : fock_dim),
      dim_(alice_dim(content) * (content == Subsystems::Alice ? 1 : fock_dim)),
      entries_(dim_ * dim_, 0.0) {}

std::size_t DensityMatrix::index(int alice, std::int64_t n) const {
  switch (content_) {
    case Subsystems::AliceRob:
      return static_cast<std::size_t>(alice) * fock_dim_ + static_cast<std::size_t>(n);
    case Subsystems::Alice:
      return static_cast<std::size_t>(alice);
    default:
      return static_cast<std::size_t>(n);
  }
}

BasisLabel DensityMatrix::label(std::size_t i) const {
  switch (content_) {
    case Subsystems::AliceRob:
      return {static_cast<int>(i / fock_dim_), static_cast<std::int64_t>(i % fock_dim_)};
    case Subsystems::Alice:
      return {static_cast<int>(i), -1};
    default:
      return {-1, static_cast<std::int64_t>(i)};
  }
}

std::vector<BasisLabel> DensityMatrix::basis_labels() const {
  std::vector<BasisLabel> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = label(i);
  return out;
}

double DensityMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double DensityMatrix::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

double DensityMatrix::hermiticity_defect() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  }
  return m;
}

DensityMatrix trace_out_region_ii(const TripartiteState& state) {
  DensityMatrix rho(Subsystems::AliceRob, static_cast<std::size_t>(state.region_i_dim()));
  // Group kets by the traced-out index; each group contributes |v><v|.
  std::map<std::int64_t, std::vector<std::pair<std::size_t, double>>> groups;
  for (const auto& [ket, amp] : state.amplitudes) {
    groups[ket.n_region_ii].push_back({rho.index(ket.alice, ket.n_region_i), amp});
  }
  for (const auto& [n2, v] : groups) {
    for (const auto& [i, ai] : v) {
      for (const auto& [j, aj] : v) rho(i, j) += ai * aj;
    }
  }
  return rho;
}

DensityMatrix trace_out_alice_and_region_i(const TripartiteState& state) {
  DensityMatrix rho(Subsystems::RegionII, static_cast<std::size_t>(state.region_ii_dim()));
  std::map<std::pair<int, std::int64_t>, std::vector<std::pair<std::size_t, double>>> groups;
  for (const auto& [ket, amp] : state.amplitudes) {
    groups[{ket.alice, ket.n_region_i}].push_back({static_cast<std::size_t>(ket.n_region_ii), amp});
  }
  for (const auto& [key, v] : groups) {
    for (const auto& [i, ai] : v) {
      for (const auto& [j, aj] : v) rho(i, j) += ai * aj;
    }
  }
  return rho;
}

DensityMatrix trace_out_alice(const DensityMatrix& rho) {
  require_alice_rob(rho, "trace_out_alice");
  const std::size_t f = rho.fock_dim();
  DensityMatrix out(Subsystems::Rob, f);
  for (int a = 0; a < 2; ++a) {
    for (std::size_t n = 0; n < f; ++n) {
      for (std::size_t m = 0; m < f; ++m) {
        out(n, m) += rho(rho.index(a, static_cast<std::int64_t>(n)), rho.index(a, static_cast<std::int64_t>(m)));
      }
    }
  }
  return out;
}

DensityMatrix trace_out_rob(const DensityMatrix& rho) {
  require_alice_rob(rho, "trace_out_rob");
  DensityMatrix out(Subsystems::Alice, 0);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (std::size_t n = 0; n < rho.fock_dim(); ++n) {
        const auto nn = static_cast<std::int64_t>(n);
        out(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) += rho(rho.index(a, nn), rho.index(b, nn));
      }
    }
  }
  return out;
}

DensityMatrix partial_transpose_alice(const DensityMatrix& rho) {
  require_alice_rob(rho, "partial_transpose_alice");
  const std::size_t f = rho.fock_dim();
  DensityMatrix out(Subsystems::AliceRob, f);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (std::size_t n = 0; n < f; ++n) {
        for (std::size_t m = 0; m < f; ++m) {
          const auto nn = static_cast<std::int64_t>(n);
          const auto mm = static_cast<std::int64_t>(m);
          out(out.index(a, nn), out.index(b, mm)) = rho(rho.index(b, nn), rho.index(a, mm));
        }
      }
    }
  }
  return out;
}

Spectrum symmetric_eigenvalues(const DensityMatrix& rho, const JacobiOptions& options) {
  return symmetric_eigenvalues(rho.entries(), rho.dim(), options);
}

EigenSystem eigensystem(const DensityMatrix& rho, const JacobiOptions& options) {
  return jacobi_eigensystem(std::vector<double>(rho.entries().begin(), rho.entries().end()), rho.dim(), options);
}

double truncation_bound(const SqueezingParameter& sp, std::int64_t n_max) {
  // Rob's factor reaches n_max + 1 but the last blocks are incomplete.
  return 3.0 * measure_remainder_bound(sp, std::max<std::int64_t>(n_max - 2, -1));
}

std::int64_t default_n_max(const SqueezingParameter& sp, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be > 0");
  const auto fits = [&](std::int64_t n) { return truncation_bound(sp, n) <= tol; };
  if (fits(0)) return 0;
  std::int64_t hi = 1;
  while (!fits(hi)) {
    if (hi >= kMaxOracleCutoff) {
      throw DomainError("no Fock cutoff up to " + std::to_string(kMaxOracleCutoff) + " reaches the tolerance");
    }
    hi = std::min(2 * hi, kMaxOracleCutoff);
  }
  std::int64_t lo = 0;
  while (hi - lo > 1) {
    const std::int64_t mid = (lo + hi) / 2;
    (fits(mid) ? hi : lo) = mid;
  }
  return hi;
}

OracleReport oracle_report(const SqueezingParameter& sp, std::int64_t n_max) {
  const TripartiteState state = build_tripartite_state(sp, n_max);
  const DensityMatrix rho = trace_out_region_ii(state);
  const DensityMatrix rho_t = partial_transpose_alice(rho);
  const DensityMatrix rho_rob = trace_out_alice(rho);
  const DensityMatrix rho_alice = trace_out_rob(rho);
  const DensityMatrix rho_ii = trace_out_alice_and_region_i(state);

  JacobiOptions with_vectors;
  with_vectors.want_vectors = true;
  OracleReport rep;
  rep.pt_system = eigensystem(rho_t, with_vectors);
  rep.pt_labels = rho_t.basis_labels();
  const Spectrum joint = symmetric_eigenvalues(rho);
  const Spectrum rob = symmetric_eigenvalues(rho_rob);
  const Spectrum alice = symmetric_eigenvalues(rho_alice);
  const Spectrum region_ii = symmetric_eigenvalues(rho_ii);

  rep.max_residual = std::max({rep.pt_system.residual, joint.residual, rob.residual, alice.residual,
                               region_ii.residual});
  rep.min_eigenvalue_joint = joint.eigenvalues.empty() ? 0.0 : joint.eigenvalues.front();
  rep.entropy_region_ii = von_neumann_entropy(region_ii.eigenvalues);
  rep.truncation_bound = truncation_bound(sp, n_max);

  const double numeric_err = rep.max_residual * static_cast<double>(rho.dim());
  const double err = rep.truncation_bound + numeric_err;
  const double norm = trace_norm(rep.pt_system.values);

  MeasureBundle& b = rep.bundle;
  b.r = sp.r();
  b.n_max = n_max;
  b.terms_used = n_max + 1;
  b.log_negativity = {std::log2(norm), err};
  b.sigma = {norm - 0.5 * sp.sech2(), err};
  const SigmaBounds bounds = sigma_bounds(sp);
  b.sigma_lower = bounds.lower;
  b.sigma_upper = bounds.upper;
  b.entropy_joint = {von_neumann_entropy(joint.eigenvalues), err};
  b.entropy_rob = {von_neumann_entropy(rob.eigenvalues), err};
  b.entropy_alice = {von_neumann_entropy(alice.eigenvalues), err};
  b.mutual_information = {b.entropy_alice.value + b.entropy_rob.value - b.entropy_joint.value, 3.0 * err};
  if (rep.min_eigenvalue_joint < -1e-10) {
    b.warnings.push_back("rho_AR has a negative eigenvalue " + std::to_string(rep.min_eigenvalue_joint));
  }
  return rep;
}

MeasureBundle measures_numeric(const SqueezingParameter& sp, std::int64_t n_max) {
  return oracle_report(sp, n_max).bundle;
}

std::vector<OracleBlock> group_pt_spectrum(const OracleReport& report) {
  const EigenSystem& sys = report.pt_system;
  if (sys.vectors.empty()) throw StructureError("PT eigensystem was computed without eigenvectors");
  std::map<std::int64_t, std::vector<double>> blocks;
  for (std::size_t k = 0; k < sys.dim; ++k) {
    const auto v = sys.vector(k);
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (std::abs(v[i]) > std::abs(v[best])) best = i;
    }
    const BasisLabel lab = report.pt_labels[best];
    std::int64_t block;
    if (lab.alice == 1) {
      block = lab.n;
    } else {
      block = lab.n - 1;  // |0,0> lands on -1, the standalone entry
    }
    blocks[block].push_back(sys.values[k]);
  }
  std::vector<OracleBlock> out;
  out.reserve(blocks.size());
  for (auto& [n, vals] : blocks) {
    std::sort(vals.begin(), vals.end(), std::greater<>());
    out.push_back({n, std::move(vals)});
  }
  return out;
}

}  // namespace unruh
