#pragma once

#include <optional>

#include "specshift/hermitian.hpp"
#include "specshift/inertia.hpp"

namespace specshift {

/// H(K) = S + K^* Omega K around the base point K0, where f is a unit
/// eigenvector of both S and H0 = H(K0) with eigenvalue lambda0.
///
/// Invariants (checked by validate_family):
///   S f = lambda0 f, K0 f = 0, ||f|| = 1, Omega invertible, and lambda0 a
///   simple eigenvalue of H0.
struct PerturbationFamily {
  HermitianMatrix S;
  HermitianMatrix Omega;
  CMatrix K0;
  CVector f;
  double lambda0 = 0.0;

  Index n() const noexcept { return S.dim(); }
  Index k() const noexcept { return Omega.dim(); }
};

/// Throws InvalidFamily naming the first violated invariant. `rel_tol` is
/// scaled by max(1, spectral radius) of each matrix it is applied to.
void validate_family(const PerturbationFamily& fam, double rel_tol = kDefaultRelTol);

/// Builds and validates a family. When `f` is omitted it is taken from the
/// eigenspace of S nearest lambda0, as the direction inside that cluster
/// closest to Ker K0 (the plain nearest eigenvector when the eigenvalue is
/// simple).
PerturbationFamily make_family(HermitianMatrix S, HermitianMatrix Omega, CMatrix K0,
                               std::optional<CVector> f, double lambda0,
                               double rel_tol = kDefaultRelTol);

/// K = K_psi + K_a with K_psi = psi <f, .> in F and K_a f = 0.
struct LateralDecomposition {
  CMatrix K_psi;
  CMatrix K_a;
  CVector psi;
};

LateralDecomposition decompose_K(const CMatrix& K, const CVector& f);

/// S + K^* Omega K. Throws DimensionMismatch when K is not k x n.
HermitianMatrix assemble_H(const PerturbationFamily& fam, const CMatrix& K);

struct SpectralShift {
  int sigma = 0;         // i_-(S - lambda0) - i_-(H0 - lambda0)
  Inertia shifted_S;     // inertia of S - lambda0
  Inertia shifted_H0;    // inertia of H0 - lambda0
  bool ambiguous() const noexcept { return shifted_S.ambiguous || shifted_H0.ambiguous; }
};

SpectralShift spectral_shift(const PerturbationFamily& fam, double rel_tol = kDefaultRelTol);

}  // namespace specshift
