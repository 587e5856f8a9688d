#pragma once

#include <vector>

#include "specshift/hermitian.hpp"
#include "specshift/inertia.hpp"

namespace specshift {

/// Split of {0..n-1} into the "A" block (`first`) and the "D" block
/// (`second`). Both are nonempty, disjoint and cover every index.
class BlockPartition {
 public:
  BlockPartition(std::vector<Index> first, std::vector<Index> second);

  // `second` is the ascending complement of `first` in {0..n-1}.
  static BlockPartition complement_of(std::vector<Index> first, Index n);
  // first = {0..split-1}, second = {split..n-1}
  static BlockPartition leading(Index split, Index n);

  const std::vector<Index>& first() const noexcept { return first_; }
  const std::vector<Index>& second() const noexcept { return second_; }
  Index dim() const noexcept { return static_cast<Index>(first_.size() + second_.size()); }

 private:
  std::vector<Index> first_;
  std::vector<Index> second_;
};

// M = (A B; B* D) in the ordering given by the partition.
struct Blocks {
  CMatrix A;
  CMatrix B;
  CMatrix D;
};

Blocks split_blocks(const HermitianMatrix& m, const BlockPartition& p);

/// Ker(block) is contained in Ker(coupling): every eigenvector v of
/// `block` with |lambda| <= tol satisfies ||coupling v|| <= 1e-8 ||coupling||.
bool kernel_condition_holds(const HermitianMatrix& block, const CMatrix& coupling, double tol);

/// A - B D^+ B^* with the Moore-Penrose D^+. Throws KernelConditionViolated
/// when Ker D is not inside Ker B, because the result then depends on the
/// choice of generalized inverse.
HermitianMatrix schur_complement(const HermitianMatrix& m, const BlockPartition& p, double tol);

/// D - B^* A^+ B, with the symmetric kernel check on A.
HermitianMatrix schur_complement_of_first(const HermitianMatrix& m, const BlockPartition& p, double tol);

struct HaynsworthReport {
  Inertia inertia_M;
  Inertia inertia_D;
  Inertia inertia_schur_D;  // of M/D = A - B D^+ B^*
  Inertia inertia_A;
  Inertia inertia_schur_A;  // of M/A = D - B^* A^+ B
  bool kernel_condition_D_holds = false;
  bool kernel_condition_A_holds = false;
  bool identity_primal_holds = false;
  bool identity_dual_holds = false;
};

/// Evaluates both inertia additivity identities. Violated hypotheses are
/// reported in the flags; the complements are still formed with the
/// Moore-Penrose inverse so failure modes can be documented.
HaynsworthReport haynsworth_report(const HermitianMatrix& m, const BlockPartition& p, double tol);

/// ||M - L diag(M/D, D) L^*||_F in the partition ordering, with
/// L = (I, B D^+; 0, I).
double schur_factorization_residual(const HermitianMatrix& m, const BlockPartition& p, double tol);

}  // namespace specshift
