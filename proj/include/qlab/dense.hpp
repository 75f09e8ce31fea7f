// Dense linear-algebra helpers on top of Eigen: Gram/isometry checks for
// label-rewrite operators, Haar-random unitaries, and dense operators on an
// enumerated label basis.
#pragma once

#include <complex>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qlab/state.hpp"

namespace qlab {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Gram matrix G(a, b) = <op|a> | op|b>> over the given domain labels.
DenseMatrix<Complex> gram_matrix(const LinearOp& op, std::span<const Registers> domain);

/// max |G - I| over all entries, computed sparsely so that it scales to
/// domains of a few ten thousand labels.
double isometry_defect(const LinearOp& op, std::span<const Registers> domain);

/// Haar-distributed unitary (orthogonal for real Scalar) via QR of a Ginibre
/// matrix with the phases of R's diagonal absorbed into Q.
template <typename Scalar = Complex, typename Rng>
DenseMatrix<Scalar> random_unitary(Eigen::Index dim, Rng& rng) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  std::normal_distribution<Real> gauss(0.0, 1.0);
  DenseMatrix<Scalar> z(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      if constexpr (Eigen::NumTraits<Scalar>::IsComplex) {
        const Real re = gauss(rng);
        z(r, c) = Scalar(re, gauss(rng));
      } else {
        z(r, c) = gauss(rng);
      }
    }
  }
  Eigen::HouseholderQR<DenseMatrix<Scalar>> qr(z);
  DenseMatrix<Scalar> q = qr.householderQ();
  const DenseMatrix<Scalar> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < dim; ++c) {
    const auto d = r(c, c);
    if (std::abs(d) > 0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

/// Operator acting as `matrix` on span{basis}; column k is the image of basis[k].
LinearOp dense_op(std::string name, std::vector<Registers> basis, DenseMatrix<Complex> matrix);

/// Dense amplitude vector of s over an enumerated basis (labels outside the
/// basis are ignored).
DenseVector<Complex> to_dense(const PureState& s, std::span<const Registers> basis);

}  // namespace qlab
