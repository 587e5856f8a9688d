#pragma once

#include <compare>
#include <vector>

#include "specshift/hermitian.hpp"

namespace specshift {

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
};

struct OrientedEdge {
  int from = 0;
  int to = 0;
  auto operator<=>(const OrientedEdge&) const = default;
};

/// Connected simple graph with nonzero edge weights and a potential per
/// vertex. Vertices are 0-based.
class WeightedGraph {
 public:
  /// Throws InvalidGraph on loops, repeated pairs, zero weights, bad
  /// vertex indices or a potential count mismatch; Disconnected when the
  /// graph is not connected.
  WeightedGraph(int num_vertices, std::vector<Edge> edges, std::vector<double> potentials);

  int num_vertices() const noexcept { return num_vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<double>& potentials() const noexcept { return potentials_; }

  // |E| - |V| + 1
  int cyclomatic_number() const noexcept {
    return static_cast<int>(edges_.size()) - num_vertices_ + 1;
  }
  bool is_tree() const noexcept { return cyclomatic_number() == 0; }

  // Edges as (min, max) vertex pairs in input order.
  std::vector<OrientedEdge> edge_pairs() const;
  // Sorted neighbor lists.
  std::vector<std::vector<int>> adjacency() const;
  // Weight of edge {a, b}, 0 if absent.
  double weight(int a, int b) const;

 private:
  int num_vertices_;
  std::vector<Edge> edges_;
  std::vector<double> potentials_;
};

/// Spanning tree T plus the ordered, oriented complement C carrying the
/// magnetic phases. beta = |C| >= 1.
struct MagneticFrame {
  std::vector<OrientedEdge> tree_edges;
  std::vector<OrientedEdge> cycle_edges;
  RVector alpha0;  // reference point in {0, pi}^beta
  RVector alpha;

  int beta() const noexcept { return static_cast<int>(cycle_edges.size()); }
};

enum class TreeStrategy { Dfs, Bfs };

/// Deterministic spanning tree rooted at vertex 0. Neighbors are
/// discovered in ascending index order; with Dfs the most recently
/// discovered vertex is expanded next, with Bfs the oldest. Cycle edges are
/// sorted lexicographically and oriented min -> max; alpha0 = alpha = 0.
/// Throws BetaZero for trees.
MagneticFrame spanning_tree(const WeightedGraph& g, TreeStrategy strategy = TreeStrategy::Dfs);

/// Frame from user-chosen cycle edges (orientation as given); the tree is
/// the remaining edges. Throws InvalidGraph if they do not form a spanning
/// tree or the phases have the wrong length, and InvalidArgument when
/// alpha0 leaves {0, pi}^beta.
MagneticFrame frame_from_cycle_edges(const WeightedGraph& g, std::vector<OrientedEdge> cycle_edges,
                                     RVector alpha0, RVector alpha);

void validate_frame(const WeightedGraph& g, const MagneticFrame& frame);

/// Real symmetric matrix: potentials on the diagonal, weights on edges.
HermitianMatrix build_H(const WeightedGraph& g);

/// H(alpha): cycle edge (u_j, v_j) carries e^{i alpha_j} w at (u_j, v_j)
/// and its conjugate at (v_j, u_j).
HermitianMatrix magnetic_H(const WeightedGraph& g, const MagneticFrame& frame, const RVector& alpha);
HermitianMatrix magnetic_H(const WeightedGraph& g, const MagneticFrame& frame);

/// H(alpha0) as a real matrix, with e^{i pi} taken as exactly -1.
RMatrix reference_H(const WeightedGraph& g, const MagneticFrame& frame);

}  // namespace specshift
