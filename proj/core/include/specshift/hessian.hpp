#pragma once

#include <span>

#include "specshift/family.hpp"
#include "specshift/schur.hpp"

namespace specshift {

/// The operator Q = Omega - Omega K0 (H0 - lambda0)^+ K0^* Omega that
/// represents the second-order term of the eigenvalue branch on the
/// lateral subspace, together with both sides of the index identities.
struct HessianReport {
  HermitianMatrix Q;
  int morse_index = 0;    // i_-(Q)
  int nullity = 0;        // i_0(Q)
  int sigma = 0;          // spectral shift
  int i_minus_omega = 0;  // i_-(Omega)
  int m = 0;              // multiplicity of lambda0 in S
  bool theorem_index_holds = false;    // morse_index == sigma + i_minus_omega
  bool theorem_nullity_holds = false;  // nullity == m - 1
  bool ambiguous = false;              // some inertia had eigenvalues near its tol
};

/// Throws SimplicityViolated when i_0(H0 - lambda0) != 1, or when the
/// detected kernel of H0 - lambda0 is not span{f}.
HessianReport hessian_Q(const PerturbationFamily& fam, double rel_tol = kDefaultRelTol);

/// The (k+n) x (k+n) arrangement (Omega, Omega K0; K0^* Omega, H0 - lambda0).
/// Its Schur complement on the leading k x k block is Q and on the trailing
/// block is S - lambda0.
HermitianMatrix lateral_block_matrix(const PerturbationFamily& fam);

struct RestrictedHessian {
  RMatrix matrix;           // Re<V_i f, Q V_j f>, symmetrized
  int morse_index = 0;
  int nullity = 0;
  int projection_rank = 0;  // real rank of {V_j f}
  bool ambiguous = false;
};

/// Second-order form of the branch restricted to the real span of
/// `directions`, pulled back through V -> V f. A projection rank of 0 means
/// every direction annihilates f and the form vanishes identically.
RestrictedHessian restricted_hessian(const PerturbationFamily& fam, std::span<const CMatrix> directions,
                                     double rel_tol = kDefaultRelTol);

}  // namespace specshift
