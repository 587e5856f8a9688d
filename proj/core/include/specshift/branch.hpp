#pragma once

#include <functional>
#include <span>
#include <vector>

#include "specshift/family.hpp"

namespace specshift {

// Eigenvector overlap |<v_prev, v>| required for an unambiguous match.
inline constexpr double kMinBranchOverlap = 0.70710678118654752;

struct BranchSample {
  double parameter = 0.0;
  double lambda = 0.0;
  CVector eigenvector;
  double overlap = 1.0;
};

struct BranchPath {
  std::vector<BranchSample> samples;
};

/// Eigenpair of `h` whose eigenvector overlaps most with `reference`.
/// Throws BranchAmbiguity when the best overlap is below kMinBranchOverlap.
BranchSample match_eigenpair(const HermitianMatrix& h, const CVector& reference);

/// Follows the continuation of lambda0 along K_of(grid[i]). The first
/// point is matched against f and must be a simple eigenvalue
/// (DegenerateStart otherwise); later points are matched against the
/// previous eigenvector.
BranchPath branch_track(const PerturbationFamily& fam, const std::function<CMatrix(double)>& K_of,
                        std::span<const double> grid, double rel_tol = kDefaultRelTol);

/// Lambda(K): the eigenvalue of H(K) whose eigenvector overlaps f most.
double branch_value(const PerturbationFamily& fam, const CMatrix& K);

/// Central differences (Lambda(K0 + hV) - Lambda(K0 - hV)) / 2h.
std::vector<double> fd_gradient(const PerturbationFamily& fam, std::span<const CMatrix> directions, double h);

/// Second differences of t -> Lambda(K0 + sum_i t_i V_i). Diagonal entries
/// use the three-point stencil, off-diagonal ones the four-point
/// (+h,+h), (+h,-h), (-h,+h), (-h,-h) stencil.
RMatrix fd_hessian(const PerturbationFamily& fam, std::span<const CMatrix> directions, double h);

/// 1e-4 * (1 + ||K0||)
double default_fd_step(const PerturbationFamily& fam);

}  // namespace specshift
