#pragma once

#include <optional>
#include <random>

#include "specshift/family.hpp"
#include "specshift/graph.hpp"
#include "specshift/schur.hpp"

namespace specshift {

using Rng = std::mt19937_64;

CMatrix random_gaussian(Index rows, Index cols, Rng& rng, bool complex = true);
CMatrix random_unitary(Index n, Rng& rng, bool complex = true);
HermitianMatrix random_hermitian(Index n, Rng& rng, bool complex = true);

/// U diag(s) V^* with singular values log-uniform in [1, max_condition].
CMatrix random_congruence(Index n, double max_condition, Rng& rng);

struct FamilyDrawOptions {
  int min_n = 3;
  int max_n = 10;
  int min_k = 1;
  int max_k = 4;
  bool positive_omega = false;  // Omega = I instead of a random diag(+-1)
  int max_multiplicity = 1;     // > 1 lets a third of the draws repeat lambda0 in S
  bool complex = true;
};

/// One draw of a perturbation family: S with eigenvalues uniform in
/// [-3, 3] and a random eigenbasis, lambda0 its median eigenvalue, f the
/// matching eigenvector, Omega = diag(+-1), K0 Gaussian with the f column
/// projected out. Returns nullopt when the draw is filtered (lambda0 not
/// simple in H0, or too close to another eigenvalue of H0).
std::optional<PerturbationFamily> draw_family(Rng& rng, const FamilyDrawOptions& opts = {});

/// Unit-Frobenius Gaussian k x n direction; `along_f0` projects out f so
/// that V f = 0.
CMatrix random_direction(const PerturbationFamily& fam, Rng& rng, bool along_f0 = false);

enum class KernelCase {
  Generic,       // random Hermitian M
  SingularD,     // rank-deficient D with B = B' D, so Ker D is inside Ker B
  BothSingular,  // singular D, possibly singular A, with B = A C D
};

struct BlockDraw {
  HermitianMatrix M;
  BlockPartition partition;
  KernelCase kind;
};

/// Hermitian M of size 2..max_n with a random (shuffled) block split.
BlockDraw draw_block_matrix(Rng& rng, int max_n, KernelCase kind);

struct GraphDrawOptions {
  int min_vertices = 3;
  int max_vertices = 8;
  int min_beta = 1;
  int max_beta = 3;
};

double random_edge_weight(Rng& rng);  // uniform on [-2, -0.2] U [0.2, 2]
double random_potential(Rng& rng);    // uniform on [-1, 5]

/// Erdos-Renyi graph conditioned on connectivity and beta in range.
WeightedGraph random_connected_graph(Rng& rng, const GraphDrawOptions& opts = {});

/// Uniform random labelled tree (Pruefer code). Weights are drawn from
/// [-2, -0.2] when `negative_weights`, else from the signed range.
WeightedGraph random_tree(Rng& rng, int num_vertices, bool negative_weights = true);

/// Uniform point of {0, pi}^beta.
RVector random_alpha0(Rng& rng, int beta);

}  // namespace specshift
