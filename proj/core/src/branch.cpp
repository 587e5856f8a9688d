#include "specshift/branch.hpp"

#include <cmath>
#include <string>

#include "specshift/error.hpp"

namespace specshift {

namespace {

struct Match {
  Index index;
  double overlap;
};

Match best_overlap(const EigenDecomposition& eig, const CVector& reference) {
  Match best{0, -1.0};
  for (Index j = 0; j < eig.vectors.cols(); ++j) {
    const double ov = std::abs(eig.vectors.col(j).dot(reference));
    if (ov > best.overlap) best = {j, ov};
  }
  return best;
}

BranchSample sample_from(const EigenDecomposition& eig, const CVector& reference, double parameter) {
  const Match m = best_overlap(eig, reference);
  if (m.overlap < kMinBranchOverlap) {
    throw Error(ErrorCode::BranchAmbiguity, "eigenvector overlap >= 1/sqrt(2)",
                "overlap " + std::to_string(m.overlap) + " at parameter " + std::to_string(parameter));
  }
  CVector v = eig.vectors.col(m.index);
  // Fix the phase so consecutive samples are comparable.
  const cplx phase = v.dot(reference);
  if (std::abs(phase) > 0) v *= std::conj(phase) / std::abs(phase);
  return {parameter, eig.values(m.index), std::move(v), m.overlap};
}

}  // namespace

BranchSample match_eigenpair(const HermitianMatrix& h, const CVector& reference) {
  return sample_from(eig_herm(h), reference, 0.0);
}

BranchPath branch_track(const PerturbationFamily& fam, const std::function<CMatrix(double)>& K_of,
                        std::span<const double> grid, double rel_tol) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "grid nonempty");
  BranchPath path;
  path.samples.reserve(grid.size());
  CVector reference = fam.f;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const EigenDecomposition eig = eig_herm(assemble_H(fam, K_of(grid[i])));
    BranchSample s = sample_from(eig, reference, grid[i]);
    if (i == 0) {
      const double tol = scaled_tol(eig, rel_tol);
      int cluster = 0;
      for (Index j = 0; j < eig.values.size(); ++j) {
        if (std::abs(eig.values(j) - s.lambda) <= tol) ++cluster;
      }
      if (cluster != 1) {
        throw Error(ErrorCode::DegenerateStart, "initial eigenvalue simple",
                    "multiplicity " + std::to_string(cluster) + " at parameter " + std::to_string(grid[i]));
      }
    }
    reference = s.eigenvector;
    path.samples.push_back(std::move(s));
  }
  return path;
}

double branch_value(const PerturbationFamily& fam, const CMatrix& K) {
  return sample_from(eig_herm(assemble_H(fam, K)), fam.f, 0.0).lambda;
}

std::vector<double> fd_gradient(const PerturbationFamily& fam, std::span<const CMatrix> directions, double h) {
  if (!(h > 0)) throw Error(ErrorCode::InvalidArgument, "h > 0");
  std::vector<double> grad;
  grad.reserve(directions.size());
  for (const CMatrix& v : directions) {
    const double plus = branch_value(fam, fam.K0 + h * v);
    const double minus = branch_value(fam, fam.K0 - h * v);
    grad.push_back((plus - minus) / (2 * h));
  }
  return grad;
}

RMatrix fd_hessian(const PerturbationFamily& fam, std::span<const CMatrix> directions, double h) {
  if (!(h > 0)) throw Error(ErrorCode::InvalidArgument, "h > 0");
  const Index d = static_cast<Index>(directions.size());
  auto at = [&](Index i, double ti, Index j, double tj) {
    CMatrix k = fam.K0 + ti * directions[static_cast<std::size_t>(i)];
    if (j >= 0) k += tj * directions[static_cast<std::size_t>(j)];
    return branch_value(fam, k);
  };
  const double center = branch_value(fam, fam.K0);
  RMatrix hess(d, d);
  for (Index i = 0; i < d; ++i) {
    hess(i, i) = (at(i, h, -1, 0) - 2 * center + at(i, -h, -1, 0)) / (h * h);
    for (Index j = i + 1; j < d; ++j) {
      const double value =
          (at(i, h, j, h) - at(i, h, j, -h) - at(i, -h, j, h) + at(i, -h, j, -h)) / (4 * h * h);
      hess(i, j) = value;
      hess(j, i) = value;
    }
  }
  return hess;
}

double default_fd_step(const PerturbationFamily& fam) { return 1e-4 * (1.0 + operator_norm(fam.K0)); }

}  // namespace specshift
