// Copyright 2026 The qpa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense complex Hermitian matrices and the spectral calculus every
// information quantity is built from.

#ifndef QPA_HERMITIAN_HPP_
#define QPA_HERMITIAN_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "qpa/error.hpp"

namespace qpa {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Index kDefaultDimensionCap = 4096;
/// Eigenvalues at or below this fraction of the largest |eigenvalue| are
/// treated as exact zeros by logs, negative powers and support projectors.
inline constexpr double kSupportTolerance = 1e-12;
/// Relative gap below which eigenvalues share a cluster (pinching, v).
inline constexpr double kClusterTolerance = 1e-8;

/// Eigendecomposition with eigenvalues in descending order and a partition of
/// the indices into near-degenerate clusters.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
  std::vector<std::vector<Index>> clusters;

  Index dim() const { return eigenvalues.size(); }

  double max_abs() const {
    return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
  }

  /// Orthogonal projector onto the span of cluster `c`.
  ComplexMatrix cluster_projector(std::size_t c) const {
    ComplexMatrix p = ComplexMatrix::Zero(dim(), dim());
    for (Index i : clusters.at(c)) {
      p.noalias() += eigenvectors.col(i) * eigenvectors.col(i).adjoint();
    }
    return p;
  }
};

/// Splits descending eigenvalues into clusters. A new cluster starts whenever
/// an eigenvalue is more than rel_tol * max|lambda| away from either its
/// predecessor or the first member of the current cluster, so ambiguous
/// chains split into more clusters rather than fewer.
inline std::vector<std::vector<Index>> cluster_eigenvalues(
    const RealVector& descending, double rel_tol = kClusterTolerance) {
  std::vector<std::vector<Index>> clusters;
  if (descending.size() == 0) return clusters;
  double tol = rel_tol * descending.cwiseAbs().maxCoeff();
  clusters.push_back({0});
  for (Index i = 1; i < descending.size(); ++i) {
    double lead = descending(clusters.back().front());
    if (descending(i - 1) - descending(i) > tol ||
        lead - descending(i) > tol) {
      clusters.push_back({i});
    } else {
      clusters.back().push_back(i);
    }
  }
  return clusters;
}

/// Deterministic dense eigendecomposition of a Hermitian matrix.
inline Spectrum eig_hermitian_entries(const ComplexMatrix& m) {
  Spectrum out;
  const Index n = m.rows();
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("Hermitian eigensolver did not converge",
                           m.norm());
  }
  // Eigen returns ascending order.
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  out.clusters = cluster_eigenvalues(out.eigenvalues);
  return out;
}

namespace detail {
struct SpectrumCache {
  std::once_flag once;
  std::optional<Spectrum> value;
};
}  // namespace detail

/// Immutable dense Hermitian matrix. The input is symmetrized on
/// construction; the spectrum is computed at most once and shared by copies.
class HermitianMatrix {
 public:
  HermitianMatrix() : HermitianMatrix(ComplexMatrix(0, 0)) {}

  explicit HermitianMatrix(const ComplexMatrix& entries)
      : cache_(std::make_shared<detail::SpectrumCache>()) {
    if (entries.rows() != entries.cols()) {
      throw DomainError("Hermitian matrix must be square, got " +
                        std::to_string(entries.rows()) + "x" +
                        std::to_string(entries.cols()));
    }
    if (!entries.allFinite()) {
      throw DomainError("Hermitian matrix entries must be finite");
    }
    entries_ = 0.5 * (entries + entries.adjoint());
  }

  static HermitianMatrix identity(Index n) {
    return HermitianMatrix(ComplexMatrix::Identity(n, n));
  }
  static HermitianMatrix zero(Index n) {
    return HermitianMatrix(ComplexMatrix::Zero(n, n));
  }
  static HermitianMatrix diagonal(const std::vector<double>& d) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(d.size()),
                                          static_cast<Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) {
      m(static_cast<Index>(i), static_cast<Index>(i)) = d[i];
    }
    return HermitianMatrix(m);
  }
  /// |v><v| for a (not necessarily normalized) vector.
  static HermitianMatrix outer(const Eigen::VectorXcd& v) {
    return HermitianMatrix(v * v.adjoint());
  }

  Index dim() const { return entries_.rows(); }
  const ComplexMatrix& entries() const { return entries_; }
  Complex operator()(Index i, Index j) const { return entries_(i, j); }

  const Spectrum& spectrum() const {
    std::call_once(cache_->once,
                   [&] { cache_->value = eig_hermitian_entries(entries_); });
    return *cache_->value;
  }

  double trace() const { return entries_.trace().real(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a,
                                   const HermitianMatrix& b) {
    return HermitianMatrix(a.entries_ + b.entries_);
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a,
                                   const HermitianMatrix& b) {
    return HermitianMatrix(a.entries_ - b.entries_);
  }
  friend HermitianMatrix operator*(double c, const HermitianMatrix& a) {
    return HermitianMatrix(c * a.entries_);
  }

 private:
  ComplexMatrix entries_;
  std::shared_ptr<detail::SpectrumCache> cache_;
};

inline Spectrum eig_hermitian(const HermitianMatrix& m) { return m.spectrum(); }

/// Rebuilds U diag(lambda) U^dagger from a spectrum.
inline ComplexMatrix reconstruct(const Spectrum& s) {
  return s.eigenvectors * s.eigenvalues.cast<Complex>().asDiagonal() *
         s.eigenvectors.adjoint();
}

/// Applies a scalar map to every eigenvalue: U diag(f(lambda)) U^dagger.
template <class F>
  requires std::is_invocable_r_v<double, F, double>
HermitianMatrix apply_spectral(const HermitianMatrix& m, F&& f) {
  const Spectrum& s = m.spectrum();
  RealVector mapped(s.dim());
  for (Index i = 0; i < s.dim(); ++i) mapped(i) = f(s.eigenvalues(i));
  return HermitianMatrix(s.eigenvectors * mapped.cast<Complex>().asDiagonal() *
                         s.eigenvectors.adjoint());
}

struct Power {
  double exponent;
};
struct Log {};
struct Exp {};
using ScalarMap = std::variant<Power, Log, Exp>;

/// Spectral function with the pseudo-inverse convention: logs and
/// non-positive powers act on the support only (eigenvalues at or below
/// support_tol * max|lambda| map to 0). Non-integer powers reject clearly
/// negative eigenvalues; positive ones clamp round-off negatives to zero.
inline HermitianMatrix matrix_function(const HermitianMatrix& m,
                                       const ScalarMap& f,
                                       double support_tol = kSupportTolerance) {
  const double cutoff = support_tol * m.spectrum().max_abs();
  if (const auto* pw = std::get_if<Power>(&f)) {
    const double p = pw->exponent;
    const bool integral = p > 0 && std::floor(p) == p;
    if (!integral) {
      double lowest = m.spectrum().dim() == 0
                          ? 0.0
                          : m.spectrum().eigenvalues.minCoeff();
      if (lowest < -cutoff) {
        throw DomainError("power " + std::to_string(p) +
                          " of a matrix with negative eigenvalue " +
                          std::to_string(lowest));
      }
    }
    return apply_spectral(m, [&](double x) {
      if (integral) return std::pow(x, p);
      if (p > 0) return x <= 0.0 ? 0.0 : std::pow(x, p);
      return x <= cutoff ? 0.0 : std::pow(x, p);
    });
  }
  if (std::holds_alternative<Log>(f)) {
    return apply_spectral(
        m, [&](double x) { return x <= cutoff ? 0.0 : std::log(x); });
  }
  return apply_spectral(m, [](double x) { return std::exp(x); });
}

/// Kronecker product a (x) b.
inline HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b,
                              Index cap = kDefaultDimensionCap) {
  const Index n = a.dim() * b.dim();
  if (n > cap) {
    throw SizeError("tensor product dimension " + std::to_string(n) +
                    " exceeds cap " + std::to_string(cap));
  }
  ComplexMatrix out(n, n);
  for (Index i = 0; i < a.dim(); ++i) {
    for (Index j = 0; j < a.dim(); ++j) {
      out.block(i * b.dim(), j * b.dim(), b.dim(), b.dim()) =
          a(i, j) * b.entries();
    }
  }
  return HermitianMatrix(out);
}

/// Pinching of rho by the eigen-clusters of sigma: sum_i E_i rho E_i.
inline HermitianMatrix pinch(const HermitianMatrix& sigma,
                             const HermitianMatrix& rho) {
  if (sigma.dim() != rho.dim()) {
    throw DomainError("pinch: dimension mismatch " +
                      std::to_string(sigma.dim()) + " vs " +
                      std::to_string(rho.dim()));
  }
  const Spectrum& s = sigma.spectrum();
  // Work in sigma's eigenbasis: keep the diagonal blocks of each cluster.
  ComplexMatrix rotated = s.eigenvectors.adjoint() * rho.entries() * s.eigenvectors;
  ComplexMatrix kept = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& cluster : s.clusters) {
    for (Index i : cluster) {
      for (Index j : cluster) kept(i, j) = rotated(i, j);
    }
  }
  return HermitianMatrix(s.eigenvectors * kept * s.eigenvectors.adjoint());
}

struct SpectralSummary {
  double operator_norm = 0.0;
  double min_eigenvalue = 0.0;
  int distinct_count_v = 0;
  HermitianMatrix support_projector;
};

inline SpectralSummary spectral_utilities(const HermitianMatrix& m) {
  const Spectrum& s = m.spectrum();
  SpectralSummary out;
  out.operator_norm = s.max_abs();
  out.min_eigenvalue = s.dim() == 0 ? 0.0 : s.eigenvalues.minCoeff();
  out.distinct_count_v = static_cast<int>(s.clusters.size());
  const double cutoff = kSupportTolerance * s.max_abs();
  out.support_projector = apply_spectral(
      m, [&](double x) { return std::abs(x) > cutoff ? 1.0 : 0.0; });
  return out;
}

/// Number of eigen-clusters of m (the eigenvalue count v of the bounds).
inline int distinct_eigenvalue_count(const HermitianMatrix& m) {
  return static_cast<int>(m.spectrum().clusters.size());
}

/// Re Tr(AB) for Hermitian A, B without forming the product.
inline double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.transpose().cwiseProduct(b)).sum().real();
}

inline double trace_norm(const HermitianMatrix& m) {
  return m.spectrum().eigenvalues.cwiseAbs().sum();
}

inline double min_eigenvalue(const HermitianMatrix& m) {
  return m.dim() == 0 ? 0.0 : m.spectrum().eigenvalues.minCoeff();
}

}  // namespace qpa

#endif  // QPA_HERMITIAN_HPP_
