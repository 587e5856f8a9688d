#include "specshift/hessian.hpp"

#include <cmath>
#include <string>

#include "specshift/error.hpp"

namespace specshift {

namespace {

// Minimum |<f, kernel vector>|^2 for the numerical kernel of H0 - lambda0.
constexpr double kKernelOverlap = 1.0 - 1e-8;

}  // namespace

HessianReport hessian_Q(const PerturbationFamily& fam, double rel_tol) {
  const HermitianMatrix shifted_h0 = assemble_H(fam, fam.K0).shifted(fam.lambda0);
  const EigenDecomposition eig = eig_herm(shifted_h0);
  const double tol = scaled_tol(eig, rel_tol);
  const Inertia h0 = inertia(eig.values, tol);
  if (h0.zero != 1) {
    throw Error(ErrorCode::SimplicityViolated, "lambda0 simple in H0",
                "i0(H0 - lambda0) = " + std::to_string(h0.zero));
  }
  for (Index j = 0; j < eig.values.size(); ++j) {
    if (std::abs(eig.values(j)) > tol) continue;
    const double overlap = std::norm(eig.vectors.col(j).dot(fam.f));
    if (overlap < kKernelOverlap) {
      throw Error(ErrorCode::SimplicityViolated, "Ker(H0 - lambda0) = span{f}",
                  "overlap " + std::to_string(overlap));
    }
  }

  const CMatrix& omega = fam.Omega.matrix();
  const CMatrix coupling = omega * fam.K0;  // Omega K0, k x n
  const CMatrix inv = pinv(eig, tol).matrix();
  HessianReport r{HermitianMatrix::hermitian_part(omega - coupling * inv * coupling.adjoint())};

  const EigenDecomposition eig_q = eig_herm(r.Q);
  const Inertia q = inertia(eig_q.values, scaled_tol(eig_q, rel_tol));
  r.morse_index = q.minus;
  r.nullity = q.zero;

  const SpectralShift shift = spectral_shift(fam, rel_tol);
  r.sigma = shift.sigma;
  r.m = shift.shifted_S.zero;

  const EigenDecomposition eig_omega = eig_herm(fam.Omega);
  const Inertia om = inertia(eig_omega.values, scaled_tol(eig_omega, rel_tol));
  r.i_minus_omega = om.minus;

  r.theorem_index_holds = r.morse_index == r.sigma + r.i_minus_omega;
  r.theorem_nullity_holds = r.nullity == r.m - 1;
  r.ambiguous = h0.ambiguous || q.ambiguous || om.ambiguous || shift.ambiguous();
  return r;
}

HermitianMatrix lateral_block_matrix(const PerturbationFamily& fam) {
  const Index k = fam.k();
  const Index n = fam.n();
  const CMatrix coupling = fam.Omega.matrix() * fam.K0;
  CMatrix m(k + n, k + n);
  m.topLeftCorner(k, k) = fam.Omega.matrix();
  m.topRightCorner(k, n) = coupling;
  m.bottomLeftCorner(n, k) = coupling.adjoint();
  m.bottomRightCorner(n, n) = assemble_H(fam, fam.K0).shifted(fam.lambda0).matrix();
  return HermitianMatrix::hermitian_part(m);
}

RestrictedHessian restricted_hessian(const PerturbationFamily& fam, std::span<const CMatrix> directions,
                                     double rel_tol) {
  if (directions.empty()) throw Error(ErrorCode::InvalidArgument, "directions nonempty");
  const HessianReport rep = hessian_Q(fam, rel_tol);
  const Index count = static_cast<Index>(directions.size());
  const Index k = fam.k();

  CMatrix images(k, count);  // columns V_j f
  for (Index j = 0; j < count; ++j) {
    const CMatrix& v = directions[static_cast<std::size_t>(j)];
    if (v.rows() != k || v.cols() != fam.n()) throw Error(ErrorCode::DimensionMismatch, "direction is k x n");
    images.col(j) = v * fam.f;
  }

  RestrictedHessian out;
  const CMatrix form = images.adjoint() * rep.Q.matrix() * images;
  out.matrix = form.real();
  out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();

  RMatrix real_images(2 * k, count);
  real_images.topRows(k) = images.real();
  real_images.bottomRows(k) = images.imag();
  Eigen::JacobiSVD<RMatrix> svd(real_images);
  const RVector& sv = svd.singularValues();
  const double rank_tol = rel_tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  for (Index j = 0; j < sv.size(); ++j) {
    if (sv(j) > rank_tol) ++out.projection_rank;
  }

  Eigen::SelfAdjointEigenSolver<RMatrix> solver(out.matrix, Eigen::EigenvaluesOnly);
  const RVector values = solver.eigenvalues();
  const double radius = values.size() > 0 ? values.cwiseAbs().maxCoeff() : 0.0;
  const Inertia in = inertia(values, rel_tol * std::max(1.0, radius));
  out.morse_index = in.minus;
  out.nullity = in.zero;
  out.ambiguous = in.ambiguous;
  return out;
}

}  // namespace specshift
