#include "specshift/branch_equation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "specshift/error.hpp"

namespace specshift {

namespace {

double distance_to_spectrum(const RVector& values, double z) {
  double d = std::numeric_limits<double>::infinity();
  for (double v : values) d = std::min(d, std::abs(v - z));
  return d;
}

}  // namespace

double branch_equation_solve(const PerturbationFamily& fam, const CMatrix& K_a, const CVector& psi,
                             const BranchEquationOptions& opts) {
  if (psi.size() != fam.k()) throw Error(ErrorCode::DimensionMismatch, "psi has length k");
  const HermitianMatrix h = assemble_H(fam, K_a);
  const double kf = (K_a * fam.f).norm();
  if (kf > 1e-10 * std::max(1.0, operator_norm(K_a))) {
    throw Error(ErrorCode::InvalidArgument, "K_a f = 0", "||K_a f|| = " + std::to_string(kf));
  }

  const EigenDecomposition eig = eig_herm(h);
  const double tol = scaled_tol(eig, opts.rel_tol);

  // Kernel of H(K_a) - lambda0: the eigenvector aligned with f.
  Index kernel = 0;
  double best = -1.0;
  for (Index j = 0; j < eig.vectors.cols(); ++j) {
    const double ov = std::abs(eig.vectors.col(j).dot(fam.f));
    if (ov > best) {
      best = ov;
      kernel = j;
    }
  }
  double gap = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < eig.values.size(); ++j) {
    if (j != kernel) gap = std::min(gap, std::abs(eig.values(j) - fam.lambda0));
  }
  if (std::abs(eig.values(kernel) - fam.lambda0) > tol || !(gap > 10 * tol)) {
    throw Error(ErrorCode::GapTooSmall, "lambda0 isolated in H(K_a)", "gap " + std::to_string(gap));
  }

  const CMatrix& omega = fam.Omega.matrix();
  const CVector omega_psi = omega * psi;
  // Components of K_a^* Omega psi in the eigenbasis; the kernel component
  // vanishes because Ran(K_a^*) is orthogonal to f.
  CVector coeff = eig.vectors.adjoint() * (K_a.adjoint() * omega_psi);
  coeff(kernel) = 0.0;
  const double base = std::real(psi.dot(omega_psi));

  auto rhs = [&](double z) {
    double correction = 0.0;
    for (Index j = 0; j < coeff.size(); ++j) {
      if (j == kernel) continue;
      correction += std::norm(coeff(j)) / (eig.values(j) - z);
    }
    return fam.lambda0 + base - correction;
  };

  const double threshold = opts.convergence * (1.0 + std::abs(fam.lambda0));
  double z = fam.lambda0;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const double next = rhs(z);
    if (!std::isfinite(next)) break;
    if (std::abs(next - z) <= threshold) return next;
    z = next;
  }
  throw Error(ErrorCode::NoConvergence, "fixed-point iteration converges",
              "after " + std::to_string(opts.max_iterations) + " iterations, ||psi|| = " +
                  std::to_string(psi.norm()));
}

double switch_identity_residual(const PerturbationFamily& fam, const CMatrix& K_a, double z, double rel_tol) {
  const HermitianMatrix h = assemble_H(fam, K_a);
  const EigenDecomposition eig_s = eig_herm(fam.S);
  const EigenDecomposition eig_h = eig_herm(h);
  const double ds = distance_to_spectrum(eig_s.values, z);
  const double dh = distance_to_spectrum(eig_h.values, z);
  if (!(ds > scaled_tol(eig_s, rel_tol)) || !(dh > scaled_tol(eig_h, rel_tol))) {
    throw Error(ErrorCode::ResolventViolation, "z in resolvent set of S and H(K_a)",
                "dist(z, spec S) = " + std::to_string(ds) + ", dist(z, spec H) = " + std::to_string(dh));
  }

  const Index n = fam.n();
  const CMatrix& omega = fam.Omega.matrix();
  const CMatrix id = CMatrix::Identity(n, n);

  const Eigen::PartialPivLU<CMatrix> s_lu(fam.S.matrix() - z * id);
  const CMatrix omega_inv = Eigen::PartialPivLU<CMatrix>(omega).inverse();
  const CMatrix inner = omega_inv + K_a * s_lu.solve(CMatrix(K_a.adjoint()));
  const CMatrix lhs = Eigen::PartialPivLU<CMatrix>(inner).inverse();

  const Eigen::PartialPivLU<CMatrix> h_lu(h.matrix() - z * id);
  const CMatrix rhs = omega - omega * K_a * h_lu.solve(CMatrix(K_a.adjoint() * omega));
  return (lhs - rhs).norm();
}

}  // namespace specshift
