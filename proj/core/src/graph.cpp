#include "specshift/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>
#include <string>

#include "specshift/error.hpp"

namespace specshift {

namespace {

OrientedEdge canonical(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

bool connected(int n, const std::vector<std::vector<int>>& adj) {
  if (n == 0) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y : adj[static_cast<std::size_t>(x)]) {
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == n;
}

bool is_zero_or_pi(double a) {
  return std::abs(a) <= 1e-12 || std::abs(std::abs(a) - std::numbers::pi) <= 1e-12;
}

}  // namespace

WeightedGraph::WeightedGraph(int num_vertices, std::vector<Edge> edges, std::vector<double> potentials)
    : num_vertices_(num_vertices), edges_(std::move(edges)), potentials_(std::move(potentials)) {
  if (num_vertices_ < 1) throw Error(ErrorCode::InvalidGraph, "at least one vertex");
  if (static_cast<int>(potentials_.size()) != num_vertices_) {
    throw Error(ErrorCode::InvalidGraph, "one potential per vertex");
  }
  std::set<OrientedEdge> seen;
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= num_vertices_ || e.v >= num_vertices_) {
      throw Error(ErrorCode::InvalidGraph, "edge endpoints are vertices",
                  "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    if (e.u == e.v) throw Error(ErrorCode::InvalidGraph, "no loops", "vertex " + std::to_string(e.u));
    if (e.weight == 0.0 || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::InvalidGraph, "edge weight nonzero",
                  "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    if (!seen.insert(canonical(e.u, e.v)).second) {
      throw Error(ErrorCode::InvalidGraph, "at most one edge per pair",
                  "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
  }
  if (!connected(num_vertices_, adjacency())) throw Error(ErrorCode::Disconnected, "graph connected");
}

std::vector<OrientedEdge> WeightedGraph::edge_pairs() const {
  std::vector<OrientedEdge> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back(canonical(e.u, e.v));
  return out;
}

std::vector<std::vector<int>> WeightedGraph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(num_vertices_));
  for (const Edge& e : edges_) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

double WeightedGraph::weight(int a, int b) const {
  for (const Edge& e : edges_) {
    if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return e.weight;
  }
  return 0.0;
}

MagneticFrame spanning_tree(const WeightedGraph& g, TreeStrategy strategy) {
  if (g.is_tree()) throw Error(ErrorCode::BetaZero, "beta = |E| - |V| + 1 >= 1");
  const auto adj = g.adjacency();
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<bool> discovered(n, false);
  std::set<OrientedEdge> tree;
  std::deque<int> frontier{0};
  discovered[0] = true;
  while (!frontier.empty()) {
    int x;
    if (strategy == TreeStrategy::Dfs) {
      x = frontier.back();
      frontier.pop_back();
    } else {
      x = frontier.front();
      frontier.pop_front();
    }
    for (int y : adj[static_cast<std::size_t>(x)]) {
      if (discovered[static_cast<std::size_t>(y)]) continue;
      discovered[static_cast<std::size_t>(y)] = true;
      tree.insert(canonical(x, y));
      frontier.push_back(y);
    }
  }

  MagneticFrame frame;
  frame.tree_edges.assign(tree.begin(), tree.end());
  for (const OrientedEdge& e : g.edge_pairs()) {
    if (!tree.contains(e)) frame.cycle_edges.push_back(e);
  }
  std::sort(frame.cycle_edges.begin(), frame.cycle_edges.end());
  frame.alpha0 = RVector::Zero(frame.beta());
  frame.alpha = RVector::Zero(frame.beta());
  return frame;
}

MagneticFrame frame_from_cycle_edges(const WeightedGraph& g, std::vector<OrientedEdge> cycle_edges,
                                     RVector alpha0, RVector alpha) {
  std::set<OrientedEdge> cycle;
  for (const OrientedEdge& e : cycle_edges) {
    if (g.weight(e.from, e.to) == 0.0) {
      throw Error(ErrorCode::InvalidGraph, "cycle edges are graph edges",
                  "(" + std::to_string(e.from) + "," + std::to_string(e.to) + ")");
    }
    if (!cycle.insert(canonical(e.from, e.to)).second) {
      throw Error(ErrorCode::InvalidGraph, "cycle edges distinct");
    }
  }
  MagneticFrame frame;
  for (const OrientedEdge& e : g.edge_pairs()) {
    if (!cycle.contains(e)) frame.tree_edges.push_back(e);
  }
  frame.cycle_edges = std::move(cycle_edges);
  frame.alpha0 = std::move(alpha0);
  frame.alpha = std::move(alpha);
  validate_frame(g, frame);
  return frame;
}

void validate_frame(const WeightedGraph& g, const MagneticFrame& frame) {
  if (frame.beta() < 1) throw Error(ErrorCode::BetaZero, "beta = |E| - |V| + 1 >= 1");
  if (static_cast<int>(frame.tree_edges.size()) != g.num_vertices() - 1 ||
      static_cast<int>(frame.tree_edges.size() + frame.cycle_edges.size()) != static_cast<int>(g.edges().size())) {
    throw Error(ErrorCode::InvalidGraph, "tree edges form a spanning tree");
  }
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.num_vertices()));
  for (const OrientedEdge& e : frame.tree_edges) {
    if (g.weight(e.from, e.to) == 0.0) throw Error(ErrorCode::InvalidGraph, "tree edges are graph edges");
    adj[static_cast<std::size_t>(e.from)].push_back(e.to);
    adj[static_cast<std::size_t>(e.to)].push_back(e.from);
  }
  if (!connected(g.num_vertices(), adj)) throw Error(ErrorCode::InvalidGraph, "tree edges form a spanning tree");
  for (const OrientedEdge& e : frame.cycle_edges) {
    if (g.weight(e.from, e.to) == 0.0) throw Error(ErrorCode::InvalidGraph, "cycle edges are graph edges");
  }
  if (frame.alpha0.size() != frame.beta() || frame.alpha.size() != frame.beta()) {
    throw Error(ErrorCode::InvalidGraph, "phase vectors have length beta");
  }
  for (double a : frame.alpha0) {
    if (!is_zero_or_pi(a)) throw Error(ErrorCode::InvalidArgument, "alpha0 in {0, pi}^beta");
  }
}

HermitianMatrix build_H(const WeightedGraph& g) {
  const int n = g.num_vertices();
  RMatrix h = RMatrix::Zero(n, n);
  for (int v = 0; v < n; ++v) h(v, v) = g.potentials()[static_cast<std::size_t>(v)];
  for (const Edge& e : g.edges()) {
    h(e.u, e.v) = e.weight;
    h(e.v, e.u) = e.weight;
  }
  return HermitianMatrix(h);
}

HermitianMatrix magnetic_H(const WeightedGraph& g, const MagneticFrame& frame, const RVector& alpha) {
  if (alpha.size() != frame.beta()) throw Error(ErrorCode::DimensionMismatch, "alpha has length beta");
  CMatrix h = build_H(g).matrix();
  for (int j = 0; j < frame.beta(); ++j) {
    const OrientedEdge& e = frame.cycle_edges[static_cast<std::size_t>(j)];
    const cplx value = std::polar(1.0, alpha(j)) * g.weight(e.from, e.to);
    h(e.from, e.to) = value;
    h(e.to, e.from) = std::conj(value);
  }
  return HermitianMatrix::hermitian_part(h);
}

HermitianMatrix magnetic_H(const WeightedGraph& g, const MagneticFrame& frame) {
  return magnetic_H(g, frame, frame.alpha);
}

RMatrix reference_H(const WeightedGraph& g, const MagneticFrame& frame) {
  validate_frame(g, frame);
  RMatrix h = build_H(g).matrix().real();
  for (int j = 0; j < frame.beta(); ++j) {
    const OrientedEdge& e = frame.cycle_edges[static_cast<std::size_t>(j)];
    const double sign = std::abs(frame.alpha0(j)) <= 1e-12 ? 1.0 : -1.0;
    h(e.from, e.to) = sign * g.weight(e.from, e.to);
    h(e.to, e.from) = h(e.from, e.to);
  }
  return h;
}

}  // namespace specshift
