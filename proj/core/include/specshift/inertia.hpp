#pragma once

#include "specshift/hermitian.hpp"

namespace specshift {

// Eigenvalues with tol < |lambda| <= kAmbiguityFactor * tol make the
// classification unreliable; such results are flagged, not rejected.
inline constexpr double kAmbiguityFactor = 10.0;

/// Counts of negative, zero and positive eigenvalues relative to `tol`.
struct Inertia {
  int minus = 0;
  int zero = 0;
  int plus = 0;
  double tol = 0.0;
  bool ambiguous = false;

  int dim() const noexcept { return minus + zero + plus; }

  // Compares the counts only.
  bool same_counts(const Inertia& other) const noexcept {
    return minus == other.minus && zero == other.zero && plus == other.plus;
  }
};

Inertia inertia(const HermitianMatrix& m, double tol);
Inertia inertia(const RVector& eigenvalues, double tol);

/// Inertia of a real symmetric matrix (used for finite-difference Hessians).
Inertia inertia_real(const RMatrix& m, double tol);

}  // namespace specshift
