#pragma once

#include <complex>

#include <Eigen/Dense>

namespace specshift {

using Index = Eigen::Index;
using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Relative asymmetry accepted (and removed) by the checked constructor.
inline constexpr double kHermitianSlack = 1e-12;
// Default relative rank tolerance; scaled by max(1, spectral radius).
inline constexpr double kDefaultRelTol = 1e-8;

/// Dense square complex matrix with exact Hermitian symmetry.
///
/// The public constructor accepts input that is Hermitian up to
/// kHermitianSlack * ||M||_F and stores (M + M*)/2; anything more
/// asymmetric is rejected with ErrorCode::NotHermitian. Values computed
/// inside the library that are Hermitian by construction go through
/// hermitian_part(), which symmetrizes unconditionally.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const CMatrix& m);
  explicit HermitianMatrix(const RMatrix& m);

  static HermitianMatrix hermitian_part(const CMatrix& m);
  static HermitianMatrix identity(Index n);
  static HermitianMatrix diagonal(const RVector& d);

  Index dim() const noexcept { return m_.rows(); }
  const CMatrix& matrix() const noexcept { return m_; }
  cplx operator()(Index i, Index j) const { return m_(i, j); }

  // M - s I
  HermitianMatrix shifted(double s) const;
  HermitianMatrix scaled(double c) const;

 private:
  struct Trusted {};
  HermitianMatrix(CMatrix m, Trusted) : m_(std::move(m)) {}

  CMatrix m_;
};

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // orthonormal columns, vectors.col(k) pairs with values(k)
};

EigenDecomposition eig_herm(const HermitianMatrix& m);

double spectral_radius(const HermitianMatrix& m);
double spectral_radius(const EigenDecomposition& eig);

// rel * max(1, spectral radius)
double scaled_tol(const HermitianMatrix& m, double rel = kDefaultRelTol);
double scaled_tol(const EigenDecomposition& eig, double rel = kDefaultRelTol);

/// Moore-Penrose inverse: eigenvalues with |lambda| > tol are inverted,
/// the rest are zeroed in the eigenbasis.
HermitianMatrix pinv(const HermitianMatrix& m, double tol);
HermitianMatrix pinv(const EigenDecomposition& eig, double tol);

/// Returns congruence^* M congruence. Throws SingularCongruence when the
/// smallest singular value of `congruence` is below 1e-10 of the largest.
HermitianMatrix sylvester_conjugate(const HermitianMatrix& m, const CMatrix& congruence);

double operator_norm(const CMatrix& m);

}  // namespace specshift
