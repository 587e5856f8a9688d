#include "specshift/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "specshift/branch.hpp"
#include "specshift/branch_equation.hpp"
#include "specshift/error.hpp"
#include "specshift/hessian.hpp"
#include "specshift/nodal.hpp"

namespace specshift {

namespace {

enum class Outcome { Pass, Fail, Discard };

struct Trial {
  Outcome outcome = Outcome::Pass;
  std::string note;
};

Trial pass() { return {}; }
Trial discard(std::string why = {}) { return {Outcome::Discard, std::move(why)}; }
Trial fail(std::string why) { return {Outcome::Fail, std::move(why)}; }

// Runs `body` until `trials` draws were accepted. Draws are capped at
// 20x the target so a broken generator cannot loop forever.
template <class Body>
SuiteResult run_trials(std::string name, int trials, Body&& body) {
  SuiteResult r;
  r.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  const long cap = 20L * std::max(trials, 1);
  for (long draw = 0; r.trials() < trials && draw < cap; ++draw) {
    Trial t;
    try {
      t = body(r.trials());
    } catch (const Error& e) {
      t = e.code() == ErrorCode::BranchAmbiguity || e.code() == ErrorCode::GapTooSmall ? discard(e.what())
                                                                                        : fail(e.what());
    }
    switch (t.outcome) {
      case Outcome::Pass:
        ++r.passed;
        break;
      case Outcome::Fail:
        ++r.failed;
        if (r.first_failure.empty()) r.first_failure = t.note;
        break;
      case Outcome::Discard:
        ++r.discarded;
        break;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string describe(const Inertia& in) {
  std::ostringstream os;
  os << '(' << in.minus << ',' << in.zero << ',' << in.plus << ')';
  return os.str();
}

// Distance from lambda0 to the rest of the spectrum of H(K).
double isolation_gap(const PerturbationFamily& fam, const CMatrix& K) {
  const EigenDecomposition eig = eig_herm(assemble_H(fam, K));
  Index nearest = 0;
  for (Index j = 1; j < eig.values.size(); ++j) {
    if (std::abs(eig.values(j) - fam.lambda0) < std::abs(eig.values(nearest) - fam.lambda0)) nearest = j;
  }
  double gap = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < eig.values.size(); ++j) {
    if (j != nearest) gap = std::min(gap, std::abs(eig.values(j) - fam.lambda0));
  }
  return gap;
}

double distance_to_spectrum(const HermitianMatrix& m, double z) {
  const RVector values = eig_herm(m).values;
  return (values.array() - z).abs().minCoeff();
}

// psi <f, .>
CMatrix lateral(const CVector& psi, const CVector& f) { return psi * f.adjoint(); }

std::optional<PerturbationFamily> draw_isolated(Rng& rng, const FamilyDrawOptions& opts, double min_gap) {
  auto fam = draw_family(rng, opts);
  if (fam && isolation_gap(*fam, fam->K0) < min_gap) return std::nullopt;
  return fam;
}

}  // namespace

SuiteResult sylvester_suite(Rng& rng, int trials) {
  return run_trials("sylvester", trials, [&](int) {
    std::uniform_int_distribution<int> size(1, 10);
    const Index n = size(rng);
    std::uniform_int_distribution<int> kind(0, 2);
    RVector d(n);
    for (Index j = 0; j < n; ++j) {
      const int k = kind(rng);
      d(j) = k == 0 ? 0.0 : std::uniform_real_distribution<double>(0.5, 3.0)(rng) * (k == 1 ? -1.0 : 1.0);
    }
    const CMatrix u = random_unitary(n, rng);
    const HermitianMatrix m = HermitianMatrix::hermitian_part(u * d.cast<cplx>().asDiagonal() * u.adjoint());
    const HermitianMatrix c = sylvester_conjugate(m, random_congruence(n, 1e3, rng));
    const Inertia before = inertia(m, scaled_tol(m));
    const Inertia after = inertia(c, scaled_tol(c));
    if (before.ambiguous || after.ambiguous) return discard();
    if (!before.same_counts(after)) return fail("inertia " + describe(before) + " became " + describe(after));
    return pass();
  });
}

SuiteResult haynsworth_suite(Rng& rng, int trials, int singular_trials) {
  return run_trials("haynsworth", trials, [&](int index) {
    KernelCase kind = KernelCase::Generic;
    if (index < singular_trials) kind = index % 2 == 0 ? KernelCase::SingularD : KernelCase::BothSingular;
    const BlockDraw draw = draw_block_matrix(rng, 12, kind);
    const double tol = scaled_tol(draw.M);

    if (kind == KernelCase::Generic) {
      // Keep D and A well conditioned so the complement is accurate.
      const Blocks b = split_blocks(draw.M, draw.partition);
      const auto smallest = [](const CMatrix& x) {
        return eig_herm(HermitianMatrix::hermitian_part(x)).values.cwiseAbs().minCoeff();
      };
      if (smallest(b.D) < 1e-3 || smallest(b.A) < 1e-3) return discard();
    }

    const HaynsworthReport r = haynsworth_report(draw.M, draw.partition, tol);
    if (r.inertia_M.ambiguous || r.inertia_D.ambiguous || r.inertia_schur_D.ambiguous || r.inertia_A.ambiguous ||
        r.inertia_schur_A.ambiguous) {
      return discard();
    }
    if (!r.kernel_condition_D_holds) return fail("constructed draw violates Ker D in Ker B");
    if (!r.identity_primal_holds) {
      return fail("primal identity: M " + describe(r.inertia_M) + ", D " + describe(r.inertia_D) + ", M/D " +
                  describe(r.inertia_schur_D));
    }
    if (r.kernel_condition_A_holds && !r.identity_dual_holds) return fail("dual identity with both kernel conditions");
    if (kind == KernelCase::BothSingular && !r.kernel_condition_A_holds) {
      return fail("constructed draw violates Ker A in Ker B*");
    }
    const double residual = schur_factorization_residual(draw.M, draw.partition, tol);
    if (residual > 1e-9 * std::max(1.0, operator_norm(draw.M.matrix()))) {
      return fail("factorization residual " + std::to_string(residual));
    }
    return pass();
  });
}

SuiteResult main_theorem_suite(Rng& rng, int trials, bool positive_omega) {
  FamilyDrawOptions opts;
  opts.positive_omega = positive_omega;
  opts.max_multiplicity = 3;
  return run_trials(positive_omega ? "main-theorem (omega > 0)" : "main-theorem", trials, [&](int) {
    const auto fam = draw_family(rng, opts);
    if (!fam) return discard();
    const HessianReport r = hessian_Q(*fam);
    if (r.ambiguous) return discard();
    if (!r.theorem_index_holds || !r.theorem_nullity_holds) {
      std::ostringstream os;
      os << "i-(Q)=" << r.morse_index << " sigma=" << r.sigma << " i-(Omega)=" << r.i_minus_omega
         << " i0(Q)=" << r.nullity << " m=" << r.m;
      return fail(os.str());
    }
    return pass();
  });
}

SuiteResult criticality_suite(Rng& rng, int trials) {
  return run_trials("criticality", trials, [&](int) {
    const auto fam = draw_isolated(rng, {}, 0.2);
    if (!fam) return discard();
    const double h = 1e-4;

    std::vector<CMatrix> dirs;
    for (int j = 0; j < 4; ++j) dirs.push_back(random_direction(*fam, rng));
    for (double g : fd_gradient(*fam, dirs, h)) {
      if (std::abs(g) > 1e-6) return fail("gradient component " + std::to_string(g));
    }

    // Only V f matters to second order: adding a V_a with V_a f = 0 leaves
    // the Hessian unchanged.
    std::vector<CMatrix> pure;
    std::vector<CMatrix> mixed;
    for (int j = 0; j < 2; ++j) {
      const CVector psi = random_gaussian(fam->k(), 1, rng).col(0).normalized();
      pure.push_back(lateral(psi, fam->f));
      mixed.push_back(pure.back() + random_direction(*fam, rng, true));
    }
    const RMatrix a = fd_hessian(*fam, pure, h);
    const RMatrix b = fd_hessian(*fam, mixed, h);
    const double diff = (a - b).cwiseAbs().maxCoeff();
    if (diff > 1e-5) return fail("reduction mismatch " + std::to_string(diff));
    return pass();
  });
}

SuiteResult branch_equation_suite(Rng& rng, int trials) {
  return run_trials("branch-equation", trials, [&](int) {
    const auto fam = draw_isolated(rng, {}, 0.1);
    if (!fam) return discard();
    const CMatrix v_a = random_direction(*fam, rng, true);
    const CVector psi1 = random_gaussian(fam->k(), 1, rng).col(0).normalized();
    const HessianReport hq = hessian_Q(*fam);
    const double scale = 1.0 + std::abs(fam->lambda0);

    // z - lambda0 - <psi, Q psi> with K = K0 + t (V_a + psi1 <f, .>).
    auto remainder = [&](double t) {
      const CMatrix k_a = fam->K0 + t * v_a;
      const CVector psi = t * psi1;
      const double z = branch_equation_solve(*fam, k_a, psi);
      const double direct = branch_value(*fam, k_a + lateral(psi, fam->f));
      const double quad = (psi.adjoint() * hq.Q.matrix() * psi)(0).real();
      return std::pair{std::abs(z - direct), std::abs(z - fam->lambda0 - quad)};
    };

    // The remainder is cubic only asymptotically; shrink t until the
    // leading term dominates or the remainder sinks into rounding noise.
    double t = 0.02;
    auto [err_prev, rem_prev] = remainder(t);
    for (int halving = 0; halving < 8; ++halving) {
      t /= 2;
      const auto [err, rem] = remainder(t);
      if (std::max(err, err_prev) > 1e-10 * scale) {
        return fail("solver vs eigensolver " + std::to_string(std::max(err, err_prev)));
      }
      if (rem_prev < 1e-11) return discard("cubic term too small to resolve");
      if (rem_prev / rem >= 7.0) return pass();
      err_prev = err;
      rem_prev = rem;
    }
    return fail("remainder not cubic down to t = " + std::to_string(t));
  });
}

SuiteResult switch_identity_suite(Rng& rng, int trials) {
  return run_trials("switch-identity", trials, [&](int) {
    const auto fam = draw_family(rng);
    if (!fam) return discard();
    const CMatrix k_a = fam->K0 + 0.5 * random_direction(*fam, rng, true);
    const double z = std::uniform_real_distribution<double>(-4.0, 4.0)(rng);
    if (distance_to_spectrum(fam->S, z) < 0.05 || distance_to_spectrum(assemble_H(*fam, k_a), z) < 0.05) {
      return discard();
    }
    const double residual = switch_identity_residual(*fam, k_a, z);
    const double omega_norm = operator_norm(fam->Omega.matrix());
    if (residual > 1e-9 * omega_norm * omega_norm) return fail("residual " + std::to_string(residual));
    return pass();
  });
}

SuiteResult magnetic_nodal_suite(Rng& rng, int graphs) {
  SuiteResult total = run_trials("magnetic-nodal", graphs, [&](int) {
    const WeightedGraph g = random_connected_graph(rng);
    MagneticFrame frame = spanning_tree(g);
    frame.alpha0 = random_alpha0(rng, static_cast<int>(frame.cycle_edges.size()));
    frame.alpha = frame.alpha0;
    int valid = 0;
    for (const NodalReport& r : nodal_reports(g, frame)) {
      if (!r.assumptions_met) continue;
      ++valid;
      if (!r.theorem_holds || r.nullity != 0) {
        std::ostringstream os;
        os << "level " << r.level << ": surplus " << r.surplus << ", FD index " << r.morse_index_fd << ", Q index "
           << r.morse_index_Q << ", FD nullity " << r.nullity;
        return fail(os.str());
      }
    }
    return valid > 0 ? pass() : discard("no level meets the assumptions");
  });
  return total;
}

SuiteResult fiedler_suite(Rng& rng, int trees) {
  return run_trials("fiedler", trees, [&](int) {
    const int n = std::uniform_int_distribution<int>(2, 10)(rng);
    const WeightedGraph tree = random_tree(rng, n);
    int valid = 0;
    for (const FiedlerLevel& level : fiedler_check(tree)) {
      if (!level.assumptions_met) continue;
      ++valid;
      if (!level.holds) {
        return fail("level " + std::to_string(level.level) + " has " + std::to_string(level.flip_count) + " flips");
      }
    }
    return valid > 0 ? pass() : discard();
  });
}

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts) {
  Rng rng(opts.seed);
  const auto count = [&](int base) { return std::max(1, static_cast<int>(std::lround(base * opts.scale))); };
  std::vector<SuiteResult> out;
  out.push_back(sylvester_suite(rng, count(200)));
  out.push_back(haynsworth_suite(rng, count(500), count(120)));
  out.push_back(main_theorem_suite(rng, count(500)));
  out.push_back(main_theorem_suite(rng, count(100), true));
  out.push_back(criticality_suite(rng, count(50)));
  out.push_back(branch_equation_suite(rng, count(100)));
  out.push_back(switch_identity_suite(rng, count(100)));
  out.push_back(magnetic_nodal_suite(rng, count(200)));
  out.push_back(fiedler_suite(rng, count(100)));
  return out;
}

}  // namespace specshift
