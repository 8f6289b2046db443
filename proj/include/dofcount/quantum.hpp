#ifndef DOFCOUNT_QUANTUM_HPP
#define DOFCOUNT_QUANTUM_HPP

// Finite-dimensional quantum reference system: density matrices, sharp
// (orthonormal-basis) measurements and the rank-one projective update.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dofcount/error.hpp"
#include "dofcount/random.hpp"

namespace dofcount {

namespace tolerance {
inline constexpr double hermitian = 1e-12;
inline constexpr double eigenvalue = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double orthonormal = 1e-10;
inline constexpr double probability_floor = 1e-12;
inline constexpr double probability_sum = 1e-10;
inline constexpr double collapse_threshold = 1e-12;
inline constexpr double rank_relative = 1e-9;
}  // namespace tolerance

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Hermitian, positive semidefinite, unit trace (within the tolerances above).
class DensityState {
 public:
  explicit DensityState(ComplexMatrix matrix) : matrix_(std::move(matrix)) { check(); }

  static DensityState pure(const ComplexVector& psi) {
    const ComplexVector unit = psi / psi.norm();
    return DensityState(unit * unit.adjoint());
  }

  static DensityState maximally_mixed(std::size_t n) {
    const auto dim = static_cast<Eigen::Index>(n);
    return DensityState(ComplexMatrix::Identity(dim, dim) / static_cast<double>(n));
  }

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  void check() const {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
      throw Error(ErrorCode::BadDimension, "density matrix must be square and nonempty");
    }
    if (!matrix_.allFinite()) throw Error(ErrorCode::NonFinite, "density matrix has non-finite entries");
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tolerance::hermitian) {
      throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - std::complex<double>(1.0, 0.0)) > tolerance::trace) {
      throw Error(ErrorCode::InvalidState, "density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(matrix_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -tolerance::eigenvalue) {
      throw Error(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
    }
  }

  ComplexMatrix matrix_;
};

/// An ordered orthonormal basis; one basis plays the role of one variable.
class MeasurementBasis {
 public:
  explicit MeasurementBasis(std::vector<ComplexVector> vectors) : vectors_(std::move(vectors)) { check(); }

  static MeasurementBasis standard(std::size_t n) {
    std::vector<ComplexVector> vs;
    for (std::size_t k = 0; k < n; ++k) {
      ComplexVector e = ComplexVector::Zero(static_cast<Eigen::Index>(n));
      e(static_cast<Eigen::Index>(k)) = 1.0;
      vs.push_back(std::move(e));
    }
    return MeasurementBasis(std::move(vs));
  }

  /// Discrete Fourier basis; unbiased with respect to the standard basis.
  static MeasurementBasis fourier(std::size_t n) {
    const double pi = std::acos(-1.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<ComplexVector> vs;
    for (std::size_t k = 0; k < n; ++k) {
      ComplexVector v(static_cast<Eigen::Index>(n));
      for (std::size_t j = 0; j < n; ++j) {
        v(static_cast<Eigen::Index>(j)) = std::polar(scale, 2.0 * pi * double(j * k) / double(n));
      }
      vs.push_back(std::move(v));
    }
    return MeasurementBasis(std::move(vs));
  }

  const std::vector<ComplexVector>& vectors() const noexcept { return vectors_; }
  const ComplexVector& operator[](std::size_t k) const { return vectors_.at(k); }
  std::size_t dimension() const noexcept { return vectors_.size(); }

 private:
  void check() const {
    const std::size_t n = vectors_.size();
    if (n < 1) throw Error(ErrorCode::BadDimension, "a basis needs at least one vector");
    for (const auto& v : vectors_) {
      if (static_cast<std::size_t>(v.size()) != n) {
        throw Error(ErrorCode::DimensionMismatch, "basis vectors must have length equal to the basis size");
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::complex<double> expected = i == j ? 1.0 : 0.0;
        if (std::abs(vectors_[i].dot(vectors_[j]) - expected) > tolerance::orthonormal) {
          throw Error(ErrorCode::InvalidState, "basis vectors are not orthonormal");
        }
      }
    }
  }

  std::vector<ComplexVector> vectors_;
};

/// M measurement bases of a common dimension. M < n+1 models a restricted
/// (superselected) set of physical variables.
class ObservableSet {
 public:
  explicit ObservableSet(std::vector<MeasurementBasis> bases) : bases_(std::move(bases)) {
    if (bases_.empty()) throw Error(ErrorCode::InvalidArgument, "an observable set needs at least one basis");
    for (const auto& b : bases_) {
      if (b.dimension() != bases_.front().dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "all bases must share one dimension");
      }
    }
  }

  const std::vector<MeasurementBasis>& bases() const noexcept { return bases_; }
  std::size_t size() const noexcept { return bases_.size(); }
  std::size_t dimension() const noexcept { return bases_.front().dimension(); }

 private:
  std::vector<MeasurementBasis> bases_;
};

namespace detail {

inline void check_dimension(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::BadDimension, "dimension must be at least 2");
}

inline ComplexVector gaussian_vector(std::size_t n, RandomStream& rng) {
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(i) = {re, im};
  }
  return v;
}

}  // namespace detail

inline DensityState random_pure_state(std::size_t n, RandomStream& rng) {
  detail::check_dimension(n);
  ComplexVector psi = detail::gaussian_vector(n, rng);
  while (psi.norm() == 0.0) psi = detail::gaussian_vector(n, rng);
  return DensityState::pure(psi);
}

/// Gram-Schmidt, projecting twice, over the columns of a complex Gaussian
/// matrix. A column that nearly vanishes after projection is redrawn.
inline MeasurementBasis random_basis(std::size_t n, RandomStream& rng) {
  detail::check_dimension(n);
  constexpr int max_redraws = 16;
  constexpr double degenerate_norm = 1e-8;
  std::vector<ComplexVector> basis;
  basis.reserve(n);
  int redraws = 0;
  while (basis.size() < n) {
    ComplexVector v = detail::gaussian_vector(n, rng);
    const double initial = v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) v -= b * b.dot(v);
    }
    const double norm = v.norm();
    if (!(norm > degenerate_norm * initial)) {
      if (++redraws > max_redraws) {
        throw Error(ErrorCode::DegenerateDraw, "repeated degenerate draws while orthonormalizing");
      }
      continue;
    }
    basis.push_back(v / norm);
  }
  return MeasurementBasis(std::move(basis));
}

/// Born probabilities <b_k|rho|b_k>, clamped to [0, 1].
inline std::vector<double> measurement_distribution(const DensityState& state, const MeasurementBasis& basis) {
  if (state.dimension() != basis.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "state has dimension " + std::to_string(state.dimension()) +
                                                  ", basis has " + std::to_string(basis.dimension()));
  }
  std::vector<double> probs;
  probs.reserve(basis.dimension());
  double sum = 0.0;
  for (const auto& b : basis.vectors()) {
    const double p = b.dot(state.matrix() * b).real();
    if (p < -tolerance::probability_floor) {
      throw Error(ErrorCode::InvariantViolation, "negative Born probability");
    }
    probs.push_back(std::clamp(p, 0.0, 1.0));
    sum += p;
  }
  if (std::abs(sum - 1.0) > tolerance::probability_sum) {
    throw Error(ErrorCode::InvariantViolation, "Born probabilities do not sum to 1");
  }
  return probs;
}

/// Projective update onto outcome k: returns |b_k><b_k|.
inline DensityState collapse(const DensityState& state, const MeasurementBasis& basis, std::size_t k) {
  const auto probs = measurement_distribution(state, basis);
  if (k >= probs.size()) throw Error(ErrorCode::InvalidArgument, "outcome index out of range");
  if (!(probs[k] > tolerance::collapse_threshold)) {
    throw Error(ErrorCode::ZeroProbabilityOutcome, "outcome " + std::to_string(k) + " has probability zero");
  }
  return DensityState::pure(basis[k]);
}

/// Draws an outcome index from the Born distribution.
inline std::size_t sample_outcome(const DensityState& state, const MeasurementBasis& basis, RandomStream& rng) {
  const auto probs = measurement_distribution(state, basis);
  double u = rng.uniform01();
  for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
    if (u < probs[k]) return k;
    u -= probs[k];
  }
  return probs.size() - 1;
}

inline ObservableSet random_observables(std::size_t n, std::size_t count, RandomStream& rng) {
  std::vector<MeasurementBasis> bases;
  for (std::size_t i = 0; i < count; ++i) bases.push_back(random_basis(n, rng));
  return ObservableSet(std::move(bases));
}

}  // namespace dofcount

#endif  // DOFCOUNT_QUANTUM_HPP
