#pragma once

#include <span>
#include <string>
#include <vector>

#include "specshift/graph.hpp"
#include "specshift/hessian.hpp"

namespace specshift {

/// Factorization H(alpha) = S + K(alpha)^* Omega K(alpha) with S supported
/// on the spanning tree and K(alpha0) f = 0.
struct CycleCoupling {
  CMatrix K;               // beta x n
  HermitianMatrix Omega;   // diag(s_e)
  std::vector<int> signs;  // s_e = sign(-H(alpha0)_{v1 v2} f_{v1} f_{v2})
};

/// Row e = (v1, v2): K[e, v1] = p_e s_e, K[e, v2] = e^{i(alpha_e - alpha0_e)} H(alpha0)_{v1 v2} / p_e,
/// with p_e = sqrt(|H(alpha0)_{v1 v2} f_{v2} / f_{v1}|).
/// Throws ZeroEntry when some |f_v| < 1e-10 ||f||.
CycleCoupling build_K_alpha(const WeightedGraph& g, const MagneticFrame& frame, const RVector& f,
                            const RVector& alpha);

/// S = H(alpha0) - K(alpha0)^* Omega K(alpha0); the same matrix results
/// from any real alpha.
HermitianMatrix tree_operator(const WeightedGraph& g, const MagneticFrame& frame, const RVector& f);

/// #{(u, v) in edges : -f_u f_v H0(u, v) < 0}. Throws ZeroEntry when an
/// endpoint entry of f is below 1e-10 ||f||.
int flip_count(const RMatrix& H0, std::span<const OrientedEdge> edges, const RVector& f);

struct NodalOptions {
  double rel_tol = kDefaultRelTol;
  double fd_step = 1e-3;       // radians
  double fd_rel_tol = 1e-6;    // inertia tolerance for the FD Hessian, times max(1, radius)
  double zero_entry = 1e-10;   // nowhere-zero threshold relative to ||f||
};

struct NodalReport {
  int level = 0;  // 1-based
  double lambda = 0.0;
  int flip_count = 0;
  int surplus = 0;
  int morse_index_fd = 0;
  int morse_index_Q = 0;
  int nullity = 0;      // of the FD Hessian
  int nullity_Q = 0;
  bool theorem_holds = false;
  bool assumptions_met = false;
  std::string assumption_note;  // empty when assumptions_met

  int omega_minus = 0;      // cycle edges with s_e < 0
  int tree_flip_count = 0;  // flips over tree edges only
  int tree_level = 0;       // position m of lambda in the spectrum of S
  RMatrix hessian_fd;
  RMatrix hessian_analytic;  // 2 Re <d_i K f, Q d_j K f>
};

/// Evaluates the nodal surplus of the `level`-th eigenvector of H(alpha0)
/// against the Morse index of alpha -> lambda_level(H(alpha)) computed two
/// ways: finite differences on the torus and the operator Q of the
/// tree factorization. Failed hypotheses are reported in-band.
NodalReport nodal_report(const WeightedGraph& g, const MagneticFrame& frame, int level,
                         const NodalOptions& opts = {});

std::vector<NodalReport> nodal_reports(const WeightedGraph& g, const MagneticFrame& frame,
                                       const NodalOptions& opts = {});

struct FiedlerLevel {
  int level = 0;  // 1-based
  int flip_count = 0;
  bool assumptions_met = false;
  bool holds = false;  // flip_count == level - 1, only meaningful with assumptions_met
};

/// Sign-flip count of every eigenvector of a tree. Throws InvalidGraph if
/// `tree` has a cycle.
std::vector<FiedlerLevel> fiedler_check(const WeightedGraph& tree, double rel_tol = kDefaultRelTol);

}  // namespace specshift
