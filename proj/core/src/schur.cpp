#include "specshift/schur.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "specshift/error.hpp"

namespace specshift {

namespace {

constexpr double kKernelSlack = 1e-8;

CMatrix gather(const CMatrix& m, const std::vector<Index>& rows, const std::vector<Index>& cols) {
  CMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  }
  return out;
}

void require_partition_fits(const HermitianMatrix& m, const BlockPartition& p) {
  if (p.dim() != m.dim()) {
    throw Error(ErrorCode::InvalidPartition, "partition covers {0..n-1}",
                "partition size " + std::to_string(p.dim()) + " vs n = " + std::to_string(m.dim()));
  }
}

// A - B X^+ B^*, X^+ Moore-Penrose at tol.
HermitianMatrix complement(const CMatrix& a, const CMatrix& b, const HermitianMatrix& x, double tol) {
  const HermitianMatrix xp = pinv(x, tol);
  return HermitianMatrix::hermitian_part(a - b * xp.matrix() * b.adjoint());
}

}  // namespace

BlockPartition::BlockPartition(std::vector<Index> first, std::vector<Index> second)
    : first_(std::move(first)), second_(std::move(second)) {
  if (first_.empty() || second_.empty()) {
    throw Error(ErrorCode::InvalidPartition, "both blocks nonempty");
  }
  const Index n = dim();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto* block : {&first_, &second_}) {
    for (Index i : *block) {
      if (i < 0 || i >= n) throw Error(ErrorCode::InvalidPartition, "indices in {0..n-1}");
      if (seen[static_cast<std::size_t>(i)]) throw Error(ErrorCode::InvalidPartition, "blocks disjoint");
      seen[static_cast<std::size_t>(i)] = true;
    }
  }
}

BlockPartition BlockPartition::complement_of(std::vector<Index> first, Index n) {
  std::vector<bool> in_first(static_cast<std::size_t>(std::max<Index>(n, 0)), false);
  for (Index i : first) {
    if (i < 0 || i >= n) throw Error(ErrorCode::InvalidPartition, "indices in {0..n-1}");
    in_first[static_cast<std::size_t>(i)] = true;
  }
  std::vector<Index> second;
  for (Index i = 0; i < n; ++i) {
    if (!in_first[static_cast<std::size_t>(i)]) second.push_back(i);
  }
  return BlockPartition(std::move(first), std::move(second));
}

BlockPartition BlockPartition::leading(Index split, Index n) {
  std::vector<Index> first(static_cast<std::size_t>(std::clamp<Index>(split, 0, n)));
  std::iota(first.begin(), first.end(), Index{0});
  return complement_of(std::move(first), n);
}

Blocks split_blocks(const HermitianMatrix& m, const BlockPartition& p) {
  require_partition_fits(m, p);
  const CMatrix& full = m.matrix();
  return {gather(full, p.first(), p.first()), gather(full, p.first(), p.second()),
          gather(full, p.second(), p.second())};
}

bool kernel_condition_holds(const HermitianMatrix& block, const CMatrix& coupling, double tol) {
  if (coupling.cols() != block.dim()) throw Error(ErrorCode::DimensionMismatch, "coupling acts on block");
  const double scale = operator_norm(coupling);
  if (scale == 0.0) return true;
  const EigenDecomposition eig = eig_herm(block);
  for (Index k = 0; k < eig.values.size(); ++k) {
    if (std::abs(eig.values(k)) > tol) continue;
    if ((coupling * eig.vectors.col(k)).norm() > kKernelSlack * scale) return false;
  }
  return true;
}

HermitianMatrix schur_complement(const HermitianMatrix& m, const BlockPartition& p, double tol) {
  const Blocks blk = split_blocks(m, p);
  const HermitianMatrix d = HermitianMatrix::hermitian_part(blk.D);
  if (!kernel_condition_holds(d, blk.B, tol)) {
    throw Error(ErrorCode::KernelConditionViolated, "Ker D subset of Ker B");
  }
  return complement(blk.A, blk.B, d, tol);
}

HermitianMatrix schur_complement_of_first(const HermitianMatrix& m, const BlockPartition& p, double tol) {
  const Blocks blk = split_blocks(m, p);
  const HermitianMatrix a = HermitianMatrix::hermitian_part(blk.A);
  const CMatrix b_adj = blk.B.adjoint();
  if (!kernel_condition_holds(a, b_adj, tol)) {
    throw Error(ErrorCode::KernelConditionViolated, "Ker A subset of Ker B*");
  }
  return complement(blk.D, b_adj, a, tol);
}

HaynsworthReport haynsworth_report(const HermitianMatrix& m, const BlockPartition& p, double tol) {
  const Blocks blk = split_blocks(m, p);
  const HermitianMatrix a = HermitianMatrix::hermitian_part(blk.A);
  const HermitianMatrix d = HermitianMatrix::hermitian_part(blk.D);
  const CMatrix b_adj = blk.B.adjoint();

  HaynsworthReport r;
  r.inertia_M = inertia(m, tol);
  r.inertia_A = inertia(a, tol);
  r.inertia_D = inertia(d, tol);
  r.inertia_schur_D = inertia(complement(blk.A, blk.B, d, tol), tol);
  r.inertia_schur_A = inertia(complement(blk.D, b_adj, a, tol), tol);
  r.kernel_condition_D_holds = kernel_condition_holds(d, blk.B, tol);
  r.kernel_condition_A_holds = kernel_condition_holds(a, b_adj, tol);

  r.identity_primal_holds = r.inertia_M.minus == r.inertia_D.minus + r.inertia_schur_D.minus &&
                            r.inertia_M.zero == r.inertia_D.zero + r.inertia_schur_D.zero;
  r.identity_dual_holds =
      r.inertia_A.minus - r.inertia_D.minus == r.inertia_schur_D.minus - r.inertia_schur_A.minus &&
      r.inertia_A.zero - r.inertia_D.zero == r.inertia_schur_D.zero - r.inertia_schur_A.zero;
  return r;
}

double schur_factorization_residual(const HermitianMatrix& m, const BlockPartition& p, double tol) {
  const Blocks blk = split_blocks(m, p);
  const HermitianMatrix d = HermitianMatrix::hermitian_part(blk.D);
  const CMatrix dp = pinv(d, tol).matrix();
  const HermitianMatrix s = complement(blk.A, blk.B, d, tol);

  const Index na = blk.A.rows();
  const Index nd = blk.D.rows();
  CMatrix lower = CMatrix::Identity(na + nd, na + nd);
  lower.topRightCorner(na, nd) = blk.B * dp;
  CMatrix middle = CMatrix::Zero(na + nd, na + nd);
  middle.topLeftCorner(na, na) = s.matrix();
  middle.bottomRightCorner(nd, nd) = blk.D;

  CMatrix permuted(na + nd, na + nd);
  permuted << blk.A, blk.B, blk.B.adjoint(), blk.D;
  return (permuted - lower * middle * lower.adjoint()).norm();
}

}  // namespace specshift
