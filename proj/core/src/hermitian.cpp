#include "specshift/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specshift/error.hpp"

namespace specshift {

namespace {

void require_square(const CMatrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "square matrix with n >= 1",
                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  require_square(m);
  if (!m.allFinite()) throw Error(ErrorCode::InvalidArgument, "finite entries");
  const double asym = (m - m.adjoint()).norm();
  if (asym > kHermitianSlack * m.norm()) {
    throw Error(ErrorCode::NotHermitian, "entries[i][j] = conj(entries[j][i])",
                "asymmetry " + std::to_string(asym));
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix::HermitianMatrix(const RMatrix& m) : HermitianMatrix(CMatrix(m.cast<cplx>())) {}

HermitianMatrix HermitianMatrix::hermitian_part(const CMatrix& m) {
  require_square(m);
  return HermitianMatrix(CMatrix((m + m.adjoint()) * 0.5), Trusted{});
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(CMatrix::Identity(n, n), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& d) {
  CMatrix m = CMatrix::Zero(d.size(), d.size());
  m.diagonal() = d.cast<cplx>();
  require_square(m);
  return HermitianMatrix(std::move(m), Trusted{});
}

HermitianMatrix HermitianMatrix::shifted(double s) const {
  CMatrix m = m_;
  m.diagonal().array() -= s;
  return HermitianMatrix(std::move(m), Trusted{});
}

HermitianMatrix HermitianMatrix::scaled(double c) const { return HermitianMatrix(CMatrix(m_ * c), Trusted{}); }

EigenDecomposition eig_herm(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    // Dense Hermitian QR iteration does not fail on finite input.
    throw std::logic_error("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double spectral_radius(const EigenDecomposition& eig) {
  return eig.values.size() == 0 ? 0.0 : eig.values.cwiseAbs().maxCoeff();
}

double spectral_radius(const HermitianMatrix& m) { return spectral_radius(eig_herm(m)); }

double scaled_tol(const EigenDecomposition& eig, double rel) {
  return rel * std::max(1.0, spectral_radius(eig));
}

double scaled_tol(const HermitianMatrix& m, double rel) { return scaled_tol(eig_herm(m), rel); }

HermitianMatrix pinv(const EigenDecomposition& eig, double tol) {
  const Index n = eig.values.size();
  RVector inv = RVector::Zero(n);
  for (Index k = 0; k < n; ++k) {
    if (std::abs(eig.values(k)) > tol) inv(k) = 1.0 / eig.values(k);
  }
  const CMatrix p = eig.vectors * inv.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
  return HermitianMatrix::hermitian_part(p);
}

HermitianMatrix pinv(const HermitianMatrix& m, double tol) {
  if (tol < 0) throw Error(ErrorCode::InvalidArgument, "tol >= 0");
  return pinv(eig_herm(m), tol);
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

HermitianMatrix sylvester_conjugate(const HermitianMatrix& m, const CMatrix& congruence) {
  if (congruence.rows() != m.dim() || congruence.cols() != m.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "congruence is n x n");
  }
  Eigen::JacobiSVD<CMatrix> svd(congruence);
  const RVector& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-10 * sv(0))) {
    throw Error(ErrorCode::SingularCongruence, "congruence invertible",
                "sigma_min/sigma_max = " + std::to_string(sv(0) > 0 ? sv(sv.size() - 1) / sv(0) : 0.0));
  }
  return HermitianMatrix::hermitian_part(congruence.adjoint() * m.matrix() * congruence);
}

}  // namespace specshift
