#include "specshift/inertia.hpp"

#include <cmath>

#include "specshift/error.hpp"

namespace specshift {

Inertia inertia(const RVector& eigenvalues, double tol) {
  if (!(tol >= 0)) throw Error(ErrorCode::InvalidArgument, "tol >= 0");
  Inertia out;
  out.tol = tol;
  for (double lambda : eigenvalues) {
    const double a = std::abs(lambda);
    if (lambda < -tol) {
      ++out.minus;
    } else if (lambda > tol) {
      ++out.plus;
    } else {
      ++out.zero;
    }
    if (a > tol && a <= kAmbiguityFactor * tol) out.ambiguous = true;
  }
  return out;
}

Inertia inertia(const HermitianMatrix& m, double tol) { return inertia(eig_herm(m).values, tol); }

Inertia inertia_real(const RMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "square matrix");
  if (m.rows() == 0) return inertia(RVector(), tol);
  const RMatrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return inertia(RVector(solver.eigenvalues()), tol);
}

}  // namespace specshift
