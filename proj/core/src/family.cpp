#include "specshift/family.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specshift/error.hpp"

namespace specshift {

namespace {

constexpr double kEigenSlack = 1e-10;
constexpr double kUnitSlack = 1e-12;

[[noreturn]] void fail(const char* invariant, const std::string& detail = {}) {
  throw Error(ErrorCode::InvalidFamily, invariant, detail);
}

}  // namespace

void validate_family(const PerturbationFamily& fam, double rel_tol) {
  const Index n = fam.n();
  const Index k = fam.k();
  if (fam.K0.rows() != k || fam.K0.cols() != n) fail("K0 is k x n");
  if (fam.f.size() != n) fail("f has length n");
  if (!std::isfinite(fam.lambda0)) fail("lambda0 finite");

  if (std::abs(fam.f.norm() - 1.0) > kUnitSlack) fail("||f|| = 1", "||f|| = " + std::to_string(fam.f.norm()));

  const EigenDecomposition eig_s = eig_herm(fam.S);
  const double s_scale = std::max(1.0, spectral_radius(eig_s));
  const double eig_res = (fam.S.matrix() * fam.f - fam.lambda0 * fam.f).norm();
  if (eig_res > kEigenSlack * s_scale) fail("S f = lambda0 f", "residual " + std::to_string(eig_res));

  const double kf = (fam.K0 * fam.f).norm();
  if (kf > kEigenSlack * std::max(1.0, operator_norm(fam.K0))) fail("K0 f = 0", "||K0 f|| = " + std::to_string(kf));

  const EigenDecomposition eig_omega = eig_herm(fam.Omega);
  if (inertia(eig_omega.values, scaled_tol(eig_omega, rel_tol)).zero != 0) fail("i0(Omega) = 0");

  const HermitianMatrix shifted = assemble_H(fam, fam.K0).shifted(fam.lambda0);
  const EigenDecomposition eig_h = eig_herm(shifted);
  const int nullity = inertia(eig_h.values, scaled_tol(eig_h, rel_tol)).zero;
  if (nullity != 1) fail("lambda0 simple in H0", "i0(H0 - lambda0) = " + std::to_string(nullity));
}

PerturbationFamily make_family(HermitianMatrix S, HermitianMatrix Omega, CMatrix K0,
                               std::optional<CVector> f, double lambda0, double rel_tol) {
  if (!f) {
    const EigenDecomposition eig = eig_herm(S);
    const double tol = scaled_tol(eig, rel_tol);
    Index nearest = 0;
    for (Index j = 1; j < eig.values.size(); ++j) {
      if (std::abs(eig.values(j) - lambda0) < std::abs(eig.values(nearest) - lambda0)) nearest = j;
    }
    std::vector<Index> cluster;
    for (Index j = 0; j < eig.values.size(); ++j) {
      if (std::abs(eig.values(j) - eig.values(nearest)) <= tol) cluster.push_back(j);
    }
    CMatrix basis(S.dim(), static_cast<Index>(cluster.size()));
    for (std::size_t c = 0; c < cluster.size(); ++c) basis.col(static_cast<Index>(c)) = eig.vectors.col(cluster[c]);
    if (cluster.size() == 1 || K0.cols() != S.dim()) {
      f = basis.col(0);
    } else {
      Eigen::JacobiSVD<CMatrix> svd(K0 * basis, Eigen::ComputeFullV);
      f = basis * svd.matrixV().col(svd.matrixV().cols() - 1);
    }
    f->normalize();
  }
  PerturbationFamily fam{std::move(S), std::move(Omega), std::move(K0), std::move(*f), lambda0};
  validate_family(fam, rel_tol);
  return fam;
}

LateralDecomposition decompose_K(const CMatrix& K, const CVector& f) {
  if (K.cols() != f.size()) throw Error(ErrorCode::DimensionMismatch, "K is k x n with n = len(f)");
  if (std::abs(f.norm() - 1.0) > kUnitSlack) throw Error(ErrorCode::InvalidArgument, "||f|| = 1");
  LateralDecomposition d;
  d.psi = K * f;
  d.K_psi = d.psi * f.adjoint();
  d.K_a = K - d.K_psi;
  return d;
}

HermitianMatrix assemble_H(const PerturbationFamily& fam, const CMatrix& K) {
  if (K.rows() != fam.k() || K.cols() != fam.n()) {
    throw Error(ErrorCode::DimensionMismatch, "K is k x n",
                std::to_string(K.rows()) + "x" + std::to_string(K.cols()));
  }
  return HermitianMatrix::hermitian_part(fam.S.matrix() + K.adjoint() * fam.Omega.matrix() * K);
}

SpectralShift spectral_shift(const PerturbationFamily& fam, double rel_tol) {
  const EigenDecomposition eig_s = eig_herm(fam.S.shifted(fam.lambda0));
  const EigenDecomposition eig_h = eig_herm(assemble_H(fam, fam.K0).shifted(fam.lambda0));
  SpectralShift out;
  out.shifted_S = inertia(eig_s.values, scaled_tol(eig_s, rel_tol));
  out.shifted_H0 = inertia(eig_h.values, scaled_tol(eig_h, rel_tol));
  out.sigma = out.shifted_S.minus - out.shifted_H0.minus;
  return out;
}

}  // namespace specshift
