#include "specshift/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "specshift/error.hpp"

namespace specshift {

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace

CMatrix random_gaussian(Index rows, Index cols, Rng& rng, bool complex) {
  std::normal_distribution<double> normal;
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = complex ? normal(rng) : 0.0;
      m(i, j) = cplx(re, im);
    }
  }
  return m;
}

CMatrix random_unitary(Index n, Rng& rng, bool complex) {
  const Eigen::HouseholderQR<CMatrix> qr(random_gaussian(n, n, rng, complex));
  CMatrix q = qr.householderQ();
  // Normalize column phases against R's diagonal for a Haar-distributed Q.
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

HermitianMatrix random_hermitian(Index n, Rng& rng, bool complex) {
  return HermitianMatrix::hermitian_part(random_gaussian(n, n, rng, complex));
}

CMatrix random_congruence(Index n, double max_condition, Rng& rng) {
  const double log_max = std::log(max_condition);
  RVector s(n);
  for (Index j = 0; j < n; ++j) s(j) = std::exp(uniform_real(rng, 0.0, log_max));
  return random_unitary(n, rng) * s.cast<cplx>().asDiagonal() * random_unitary(n, rng).adjoint();
}

std::optional<PerturbationFamily> draw_family(Rng& rng, const FamilyDrawOptions& opts) {
  const int n = uniform_int(rng, opts.min_n, opts.max_n);
  const int k = uniform_int(rng, opts.min_k, opts.max_k);
  const int center = (n - 1) / 2;

  int mult = 1;
  const int mult_cap = std::min({opts.max_multiplicity, k + 1, n - center});
  if (mult_cap > 1 && uniform_int(rng, 0, 2) == 0) mult = uniform_int(rng, 2, mult_cap);

  RVector values(n);
  bool spaced = false;
  for (int attempt = 0; attempt < 100 && !spaced; ++attempt) {
    for (int j = 0; j < n; ++j) values(j) = uniform_real(rng, -3.0, 3.0);
    std::sort(values.begin(), values.end());
    for (int j = 1; j < mult; ++j) values(center + j) = values(center);
    spaced = true;
    for (int j = 1; j < n; ++j) {
      const bool repeat = j > center && j < center + mult;
      if (!repeat && values(j) - values(j - 1) < 1e-3) spaced = false;
    }
  }
  if (!spaced) return std::nullopt;

  const CMatrix u = random_unitary(n, rng, opts.complex);
  HermitianMatrix s = HermitianMatrix::hermitian_part(u * values.cast<cplx>().asDiagonal() * u.adjoint());
  const CVector f = u.col(center);
  const double lambda0 = values(center);

  RVector signs(k);
  for (int j = 0; j < k; ++j) signs(j) = opts.positive_omega || uniform_int(rng, 0, 1) == 1 ? 1.0 : -1.0;
  HermitianMatrix omega = HermitianMatrix::diagonal(signs);

  CMatrix k0 = random_gaussian(k, n, rng, opts.complex);
  k0 -= (k0 * f) * f.adjoint();

  PerturbationFamily fam{std::move(s), std::move(omega), std::move(k0), f, lambda0};
  const EigenDecomposition eig = eig_herm(assemble_H(fam, fam.K0));
  int near = 0;
  const double gap_floor = 1e-4 * std::max(1.0, spectral_radius(eig));
  for (double v : eig.values) {
    if (std::abs(v - lambda0) <= gap_floor) ++near;
  }
  if (near != 1) return std::nullopt;
  try {
    validate_family(fam);
  } catch (const Error&) {
    return std::nullopt;
  }
  return fam;
}

CMatrix random_direction(const PerturbationFamily& fam, Rng& rng, bool along_f0) {
  CMatrix v = random_gaussian(fam.k(), fam.n(), rng, true);
  if (along_f0) v -= (v * fam.f) * fam.f.adjoint();
  return v / v.norm();
}

namespace {

// Hermitian block with eigenvalues in [0.5, 3] of random sign, `rank` of
// them nonzero.
CMatrix random_block(Index n, Index rank, Rng& rng) {
  RVector d = RVector::Zero(n);
  for (Index j = 0; j < rank; ++j) {
    d(j) = uniform_real(rng, 0.5, 3.0) * (uniform_int(rng, 0, 1) == 0 ? -1.0 : 1.0);
  }
  const CMatrix u = random_unitary(n, rng);
  return u * d.cast<cplx>().asDiagonal() * u.adjoint();
}

}  // namespace

BlockDraw draw_block_matrix(Rng& rng, int max_n, KernelCase kind) {
  const int n = uniform_int(rng, 2, std::max(2, max_n));
  const int na = uniform_int(rng, 1, n - 1);
  const int nd = n - na;

  CMatrix a;
  CMatrix b;
  CMatrix d;
  switch (kind) {
    case KernelCase::Generic: {
      const CMatrix m = random_hermitian(n, rng).matrix();
      a = m.topLeftCorner(na, na);
      b = m.topRightCorner(na, nd);
      d = m.bottomRightCorner(nd, nd);
      break;
    }
    case KernelCase::SingularD: {
      a = random_hermitian(na, rng).matrix();
      d = random_block(nd, uniform_int(rng, 0, nd - 1), rng);
      b = random_gaussian(na, nd, rng) * d;
      break;
    }
    case KernelCase::BothSingular: {
      a = random_block(na, uniform_int(rng, 0, na), rng);
      d = random_block(nd, uniform_int(rng, 0, nd - 1), rng);
      b = a * random_gaussian(na, nd, rng) * d;
      break;
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Index> first(order.begin(), order.begin() + na);
  std::vector<Index> second(order.begin() + na, order.end());

  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool ri = i < na;
      const bool cj = j < na;
      cplx value;
      if (ri && cj) {
        value = a(i, j);
      } else if (ri) {
        value = b(i, j - na);
      } else if (cj) {
        value = std::conj(b(j, i - na));
      } else {
        value = d(i - na, j - na);
      }
      m(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]) = value;
    }
  }
  return {HermitianMatrix::hermitian_part(m), BlockPartition(std::move(first), std::move(second)), kind};
}

double random_edge_weight(Rng& rng) {
  const double magnitude = uniform_real(rng, 0.2, 2.0);
  return uniform_int(rng, 0, 1) == 0 ? -magnitude : magnitude;
}

double random_potential(Rng& rng) { return uniform_real(rng, -1.0, 5.0); }

WeightedGraph random_connected_graph(Rng& rng, const GraphDrawOptions& opts) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const int n = uniform_int(rng, std::max(opts.min_vertices, 3), opts.max_vertices);
    const int target_beta = uniform_int(rng, opts.min_beta, opts.max_beta);
    const double pairs = n * (n - 1) / 2.0;
    const double p = std::min(1.0, (n - 1 + target_beta) / pairs);
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (coin(rng)) edges.push_back({u, v, random_edge_weight(rng)});
      }
    }
    const int beta = static_cast<int>(edges.size()) - n + 1;
    if (beta < opts.min_beta || beta > opts.max_beta) continue;
    std::vector<double> q(static_cast<std::size_t>(n));
    for (double& x : q) x = random_potential(rng);
    try {
      return WeightedGraph(n, std::move(edges), std::move(q));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Disconnected) throw;
    }
  }
  throw std::runtime_error("random_connected_graph: no admissible graph after 100000 attempts");
}

WeightedGraph random_tree(Rng& rng, int num_vertices, bool negative_weights) {
  const int n = num_vertices;
  std::vector<Edge> edges;
  auto weight = [&] { return negative_weights ? -uniform_real(rng, 0.2, 2.0) : random_edge_weight(rng); };
  if (n == 2) {
    edges.push_back({0, 1, weight()});
  } else if (n > 2) {
    std::vector<int> code(static_cast<std::size_t>(n - 2));
    for (int& c : code) c = uniform_int(rng, 0, n - 1);
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (int c : code) ++degree[static_cast<std::size_t>(c)];
    for (int c : code) {
      int leaf = 0;
      while (degree[static_cast<std::size_t>(leaf)] != 1) ++leaf;
      edges.push_back({std::min(leaf, c), std::max(leaf, c), weight()});
      --degree[static_cast<std::size_t>(leaf)];
      --degree[static_cast<std::size_t>(c)];
    }
    std::vector<int> last;
    for (int v = 0; v < n; ++v) {
      if (degree[static_cast<std::size_t>(v)] == 1) last.push_back(v);
    }
    edges.push_back({last[0], last[1], weight()});
  }
  std::vector<double> q(static_cast<std::size_t>(n));
  for (double& x : q) x = random_potential(rng);
  return WeightedGraph(n, std::move(edges), std::move(q));
}

RVector random_alpha0(Rng& rng, int beta) {
  RVector a(beta);
  for (int j = 0; j < beta; ++j) a(j) = uniform_int(rng, 0, 1) == 0 ? 0.0 : std::numbers::pi;
  return a;
}

}  // namespace specshift
