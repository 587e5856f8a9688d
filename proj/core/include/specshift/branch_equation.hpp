#pragma once

#include "specshift/family.hpp"

namespace specshift {

struct BranchEquationOptions {
  double rel_tol = kDefaultRelTol;
  int max_iterations = 200;
  double convergence = 1e-12;  // |z_{m+1} - z_m| <= convergence * (1 + |lambda0|)
};

/// Solves z = lambda0 + <psi, (Omega - Omega K_a (H(K_a) - z)^+ K_a^* Omega) psi>
/// by fixed-point iteration from z = lambda0. The generalized inverse is
/// taken on the orthogonal complement of Ker(H(K_a) - lambda0), so the
/// right-hand side is continuous through z = lambda0.
///
/// The result is the eigenvalue branch at K = K_a + psi <f, .>.
/// Throws InvalidArgument when K_a f != 0, GapTooSmall when lambda0 is not
/// isolated in H(K_a) by more than 10 tol, NoConvergence after
/// max_iterations.
double branch_equation_solve(const PerturbationFamily& fam, const CMatrix& K_a, const CVector& psi,
                             const BranchEquationOptions& opts = {});

/// || (Omega^-1 + K_a (S - z)^-1 K_a^*)^-1 - (Omega - Omega K_a (H(K_a) - z)^-1 K_a^* Omega) ||_F
/// with both sides evaluated independently. Throws ResolventViolation when
/// z is within tol of the spectrum of S or of H(K_a).
double switch_identity_residual(const PerturbationFamily& fam, const CMatrix& K_a, double z,
                                double rel_tol = kDefaultRelTol);

}  // namespace specshift
