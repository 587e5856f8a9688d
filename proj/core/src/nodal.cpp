#include "specshift/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "specshift/branch.hpp"
#include "specshift/error.hpp"

namespace specshift {

namespace {

void require_nowhere_zero(const RVector& f, double threshold) {
  const double floor = threshold * f.norm();
  for (Index v = 0; v < f.size(); ++v) {
    if (!(std::abs(f(v)) >= floor) || f(v) == 0.0) {
      throw Error(ErrorCode::ZeroEntry, "eigenvector has no zero entries", "vertex " + std::to_string(v + 1));
    }
  }
}

double min_gap(const RVector& values, Index index) {
  double gap = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < values.size(); ++j) {
    if (j != index) gap = std::min(gap, std::abs(values(j) - values(index)));
  }
  return gap;
}

struct TorusSample {
  double lambda;
  double gap;
};

TorusSample sample_torus(const WeightedGraph& g, const MagneticFrame& frame, const RVector& alpha,
                         const CVector& f) {
  const EigenDecomposition eig = eig_herm(magnetic_H(g, frame, alpha));
  Index index = 0;
  double best = -1.0;
  for (Index j = 0; j < eig.vectors.cols(); ++j) {
    const double ov = std::abs(eig.vectors.col(j).dot(f));
    if (ov > best) {
      best = ov;
      index = j;
    }
  }
  if (best < kMinBranchOverlap) {
    throw Error(ErrorCode::BranchAmbiguity, "eigenvector overlap >= 1/sqrt(2)", "overlap " + std::to_string(best));
  }
  return {eig.values(index), min_gap(eig.values, index)};
}

}  // namespace

CycleCoupling build_K_alpha(const WeightedGraph& g, const MagneticFrame& frame, const RVector& f,
                            const RVector& alpha) {
  validate_frame(g, frame);
  if (f.size() != g.num_vertices()) throw Error(ErrorCode::DimensionMismatch, "f has one entry per vertex");
  if (alpha.size() != frame.beta()) throw Error(ErrorCode::DimensionMismatch, "alpha has length beta");
  require_nowhere_zero(f, 1e-10);

  const RMatrix h0 = reference_H(g, frame);
  const int beta = frame.beta();
  CycleCoupling c{CMatrix::Zero(beta, g.num_vertices()), HermitianMatrix::identity(beta), {}};
  RVector signs(beta);
  for (int e = 0; e < beta; ++e) {
    const auto [v1, v2] = frame.cycle_edges[static_cast<std::size_t>(e)];
    const double h = h0(v1, v2);
    const double s = -h * f(v1) * f(v2) > 0 ? 1.0 : -1.0;
    const double p = std::sqrt(std::abs(h * f(v2) / f(v1)));
    c.K(e, v1) = p * s;
    c.K(e, v2) = std::polar(1.0, alpha(e) - frame.alpha0(e)) * (h / p);
    signs(e) = s;
    c.signs.push_back(static_cast<int>(s));
  }
  c.Omega = HermitianMatrix::diagonal(signs);
  return c;
}

HermitianMatrix tree_operator(const WeightedGraph& g, const MagneticFrame& frame, const RVector& f) {
  const CycleCoupling c = build_K_alpha(g, frame, f, frame.alpha0);
  const CMatrix h0 = reference_H(g, frame).cast<cplx>();
  return HermitianMatrix::hermitian_part(h0 - c.K.adjoint() * c.Omega.matrix() * c.K);
}

int flip_count(const RMatrix& H0, std::span<const OrientedEdge> edges, const RVector& f) {
  const double floor = 1e-10 * f.norm();
  int count = 0;
  for (const OrientedEdge& e : edges) {
    for (int v : {e.from, e.to}) {
      if (!(std::abs(f(v)) >= floor) || f(v) == 0.0) {
        throw Error(ErrorCode::ZeroEntry, "f nonzero on edge endpoints", "vertex " + std::to_string(v + 1));
      }
    }
    if (-f(e.from) * f(e.to) * H0(e.from, e.to) < 0) ++count;
  }
  return count;
}

NodalReport nodal_report(const WeightedGraph& g, const MagneticFrame& frame, int level, const NodalOptions& opts) {
  validate_frame(g, frame);
  const int n = g.num_vertices();
  if (level < 1 || level > n) throw Error(ErrorCode::InvalidArgument, "level in 1..N");

  const RMatrix h0 = reference_H(g, frame);
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(h0);
  const RVector& values = solver.eigenvalues();
  const Index idx = level - 1;

  NodalReport r;
  r.level = level;
  r.lambda = values(idx);
  const RVector f = solver.eigenvectors().col(idx);

  const double tol = opts.rel_tol * std::max(1.0, values.cwiseAbs().maxCoeff());
  if (!(min_gap(values, idx) > tol)) {
    r.assumption_note = "eigenvalue not simple";
    return r;
  }
  const double floor = opts.zero_entry * f.norm();
  for (Index v = 0; v < f.size(); ++v) {
    if (!(std::abs(f(v)) > floor)) {
      r.assumption_note = "eigenvector vanishes at vertex " + std::to_string(v + 1);
      return r;
    }
  }

  const auto edges = g.edge_pairs();
  r.flip_count = flip_count(h0, edges, f);
  r.surplus = r.flip_count - (level - 1);
  r.tree_flip_count = flip_count(h0, frame.tree_edges, f);

  // Second derivatives of alpha -> lambda(H(alpha)) at alpha0.
  const int beta = frame.beta();
  const double h = opts.fd_step;
  const CVector fc = f.cast<cplx>();
  double box_gap = std::numeric_limits<double>::infinity();
  auto at = [&](int i, double ti, int j, double tj) {
    RVector a = frame.alpha0;
    if (i >= 0) a(i) += ti;
    if (j >= 0) a(j) += tj;
    const TorusSample s = sample_torus(g, frame, a, fc);
    box_gap = std::min(box_gap, s.gap);
    return s.lambda;
  };
  r.hessian_fd = RMatrix(beta, beta);
  try {
    const double center = at(-1, 0, -1, 0);
    for (int i = 0; i < beta; ++i) {
      r.hessian_fd(i, i) = (at(i, h, -1, 0) - 2 * center + at(i, -h, -1, 0)) / (h * h);
      for (int j = i + 1; j < beta; ++j) {
        const double value =
            (at(i, h, j, h) - at(i, h, j, -h) - at(i, -h, j, h) + at(i, -h, j, -h)) / (4 * h * h);
        r.hessian_fd(i, j) = value;
        r.hessian_fd(j, i) = value;
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BranchAmbiguity) throw;
    r.assumption_note = "branch ambiguous within the difference stencil";
    return r;
  }
  if (!(box_gap > 10 * h)) {
    r.assumption_note = "spectral gap " + std::to_string(box_gap) + " within the difference stencil below 10 h";
    return r;
  }
  // Operator route through the tree factorization.
  const CycleCoupling c = build_K_alpha(g, frame, f, frame.alpha0);
  HermitianMatrix s = tree_operator(g, frame, f);
  PerturbationFamily fam{std::move(s), c.Omega, c.K, fc, r.lambda};
  const HessianReport q = hessian_Q(fam, opts.rel_tol);
  r.morse_index_Q = q.morse_index;
  r.nullity_Q = q.nullity;
  r.omega_minus = q.i_minus_omega;
  r.tree_level = q.sigma + level;  // m - n = sigma

  // d K / d alpha_j at alpha0 only touches K[j, v2], by a factor i.
  CMatrix images = CMatrix::Zero(beta, beta);
  for (int j = 0; j < beta; ++j) {
    const int v2 = frame.cycle_edges[static_cast<std::size_t>(j)].to;
    images(j, j) = cplx(0.0, 1.0) * c.K(j, v2) * f(v2);
  }
  r.hessian_analytic = 2.0 * (images.adjoint() * q.Q.matrix() * images).real();

  const Eigen::SelfAdjointEigenSolver<RMatrix> hess_solver(r.hessian_fd, Eigen::EigenvaluesOnly);
  const double radius = hess_solver.eigenvalues().cwiseAbs().maxCoeff();
  const double fd_tol = opts.fd_rel_tol * std::max(1.0, radius);
  const Inertia fd = inertia(RVector(hess_solver.eigenvalues()), fd_tol);
  r.morse_index_fd = fd.minus;
  r.nullity = fd.zero;

  // A Hessian eigenvalue this small cannot be resolved by the stencil, so
  // the critical point is degenerate for all practical purposes.
  const Eigen::SelfAdjointEigenSolver<RMatrix> exact(r.hessian_analytic, Eigen::EigenvaluesOnly);
  const double weakest = exact.eigenvalues().cwiseAbs().minCoeff();
  if (!(weakest > kAmbiguityFactor * fd_tol)) {
    r.assumption_note = "critical point nearly degenerate: Hessian eigenvalue " + std::to_string(weakest) +
                        " below the difference resolution";
    return r;
  }

  r.assumptions_met = true;
  r.theorem_holds = r.surplus == r.morse_index_fd && r.surplus == r.morse_index_Q;
  return r;
}

std::vector<NodalReport> nodal_reports(const WeightedGraph& g, const MagneticFrame& frame, const NodalOptions& opts) {
  std::vector<NodalReport> out;
  out.reserve(static_cast<std::size_t>(g.num_vertices()));
  for (int level = 1; level <= g.num_vertices(); ++level) out.push_back(nodal_report(g, frame, level, opts));
  return out;
}

std::vector<FiedlerLevel> fiedler_check(const WeightedGraph& tree, double rel_tol) {
  if (!tree.is_tree()) throw Error(ErrorCode::InvalidGraph, "graph is a tree");
  const RMatrix h = build_H(tree).matrix().real();
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(h);
  const RVector& values = solver.eigenvalues();
  const double tol = rel_tol * std::max(1.0, values.cwiseAbs().maxCoeff());
  const auto edges = tree.edge_pairs();

  std::vector<FiedlerLevel> out;
  for (Index m = 0; m < values.size(); ++m) {
    FiedlerLevel lv;
    lv.level = static_cast<int>(m + 1);
    const RVector f = solver.eigenvectors().col(m);
    const bool nowhere_zero = (f.cwiseAbs().array() > 1e-10 * f.norm()).all();
    lv.assumptions_met = min_gap(values, m) > tol && nowhere_zero;
    if (nowhere_zero) {
      lv.flip_count = flip_count(h, edges, f);
      lv.holds = lv.flip_count == lv.level - 1;
    }
    out.push_back(lv);
  }
  return out;
}

}  // namespace specshift
