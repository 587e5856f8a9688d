#include <cmath>

#include <gtest/gtest.h>

#include "specshift/branch.hpp"
#include "specshift/branch_equation.hpp"
#include "specshift/error.hpp"
#include "specshift/hessian.hpp"
#include "specshift/random.hpp"
#include "specshift/selftest.hpp"
#include "support.hpp"

namespace specshift {
namespace {

using test::expect_near;
using test::real_matrix;
using test::example_family;

CVector unit(Index n, Index i) {
  CVector v = CVector::Zero(n);
  v(i) = 1.0;
  return v;
}

// Real family with K0 = 0.
PerturbationFamily unperturbed() {
  RVector s(3);
  s << -1, 0.5, 2;
  return make_family(HermitianMatrix::diagonal(s), HermitianMatrix::identity(2), CMatrix::Zero(2, 3), unit(3, 1), 0.5);
}

TEST(Family, ValidationNamesTheInvariant) {
  PerturbationFamily fam = example_family();
  fam.K0(0, 0) = 1.0;  // K0 f != 0
  try {
    validate_family(fam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidFamily);
    EXPECT_NE(e.invariant().find("K0 f"), std::string::npos) << e.invariant();
  }

  PerturbationFamily singular = example_family();
  singular.Omega = HermitianMatrix::diagonal(RVector::Zero(2));
  EXPECT_THROW(validate_family(singular), Error);

  PerturbationFamily wrong_lambda = example_family();
  wrong_lambda.lambda0 = 1.0;
  EXPECT_THROW(validate_family(wrong_lambda), Error);
}

TEST(Family, MissingEigenvectorIsFilledIn) {
  RVector s(4);
  s << 0, 1, -1, -2;
  const RMatrix k0 = real_matrix({{0, 0.5, 0.5, 1.5}, {0, 1, 2, 1}});
  const PerturbationFamily fam =
      make_family(HermitianMatrix::diagonal(s), HermitianMatrix::identity(2), k0.cast<cplx>(), std::nullopt, 0.0);
  EXPECT_NEAR(std::abs(fam.f(0)), 1.0, 1e-14);
}

TEST(DecomposeK, CoordinateDirection) {
  const CMatrix k = real_matrix({{1, 2}, {3, 4}}).cast<cplx>();
  const LateralDecomposition d = decompose_K(k, unit(2, 0));
  expect_near(d.psi, real_matrix({{1}, {3}}).cast<cplx>(), 1e-15);
  expect_near(d.K_psi, real_matrix({{1, 0}, {3, 0}}).cast<cplx>(), 1e-15);
  expect_near(d.K_a, real_matrix({{0, 2}, {0, 4}}).cast<cplx>(), 1e-15);
}

TEST(DecomposeK, MemberOfTheAnnihilator) {
  const PerturbationFamily fam = example_family();
  const LateralDecomposition d = decompose_K(fam.K0, fam.f);
  EXPECT_LE(d.psi.norm(), 1e-15);
  expect_near(d.K_a, fam.K0, 1e-15);
}

TEST(DecomposeK, LateralPartIsAnIsometry) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix k = random_gaussian(3, 6, rng);
    const CVector f = random_gaussian(6, 1, rng).col(0).normalized();
    const LateralDecomposition d = decompose_K(k, f);
    EXPECT_NEAR(operator_norm(d.K_psi), d.psi.norm(), 1e-12);
    EXPECT_LE((d.K_a * f).norm(), 1e-12);
    expect_near(d.K_psi + d.K_a, k, 1e-13);
  }
}

TEST(AssembleH, Examples) {
  const PerturbationFamily fam = example_family();
  expect_near(assemble_H(fam, CMatrix::Zero(2, 4)).matrix(), fam.S.matrix(), 0.0);
  const HermitianMatrix h0 = assemble_H(fam, fam.K0);
  EXPECT_LE((h0.matrix() * fam.f).norm(), 1e-15);
  EXPECT_THROW(assemble_H(fam, CMatrix::Zero(3, 4)), Error);
}

TEST(AssembleH, ZeroPersistsAlongTheFlow) {
  for (double t : {0.1, 0.7, 1.0, 2.5, 3.0}) {
    const PerturbationFamily fam = example_family(t);
    const RVector values = eig_herm(assemble_H(fam, fam.K0)).values;
    EXPECT_LE(values.cwiseAbs().minCoeff(), 1e-14) << "t = " << t;
  }
}

TEST(SpectralShift, UnperturbedExample) {
  EXPECT_EQ(spectral_shift(example_family(0.1)).sigma, 0);
  EXPECT_EQ(spectral_shift(example_family(1.0)).sigma, 1);
  EXPECT_EQ(spectral_shift(example_family(2.5)).sigma, 2);
  EXPECT_EQ(spectral_shift(unperturbed()).sigma, 0);
}

TEST(HessianQ, UnperturbedExample) {
  // Expected Q from an independent numpy evaluation of the defining formula.
  struct Case {
    double t;
    int index;
    double q00, q01, q11;
  };
  for (const Case& c : {Case{0.1, 0, 0.115812917594655, 0.022271714922049, 0.158129175946548},
                        Case{1.0, 1, 2.0, -1.0, 0.1},
                        Case{2.5, 2, -4.525547445255463, 1.824817518248169, -1.058394160583958}}) {
    const HessianReport r = hessian_Q(example_family(c.t));
    EXPECT_EQ(r.morse_index, c.index);
    EXPECT_EQ(r.sigma, c.index);
    EXPECT_EQ(r.nullity, 0);
    EXPECT_EQ(r.m, 1);
    EXPECT_TRUE(r.theorem_index_holds);
    EXPECT_TRUE(r.theorem_nullity_holds);
    EXPECT_NEAR(r.Q(0, 0).real(), c.q00, 1e-12);
    EXPECT_NEAR(r.Q(0, 1).real(), c.q01, 1e-12);
    EXPECT_NEAR(r.Q(1, 1).real(), c.q11, 1e-12);
  }
}

TEST(HessianQ, ZeroCouplingGivesOmega) {
  const PerturbationFamily fam = unperturbed();
  expect_near(hessian_Q(fam).Q.matrix(), fam.Omega.matrix(), 0.0);
}

TEST(HessianQ, RejectsMultipleEigenvalueOfH0) {
  RVector s(3);
  s << 0, 0, 1;
  // K0 = 0 keeps the double eigenvalue in H0.
  PerturbationFamily fam{HermitianMatrix::diagonal(s), HermitianMatrix::identity(1), CMatrix::Zero(1, 3), unit(3, 0),
                         0.0};
  try {
    hessian_Q(fam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == ErrorCode::SimplicityViolated || e.code() == ErrorCode::InvalidFamily);
  }
}

TEST(HessianQ, AgreesWithTheSchurComplementPath) {
  for (double t : {0.1, 1.0, 2.5}) {
    const PerturbationFamily fam = example_family(t);
    const HermitianMatrix m = lateral_block_matrix(fam);
    const BlockPartition p = BlockPartition::leading(fam.k(), fam.k() + fam.n());
    const HermitianMatrix q = schur_complement(m, p, scaled_tol(m));
    expect_near(q.matrix(), hessian_Q(fam).Q.matrix(), 1e-12);
    const HermitianMatrix other = schur_complement_of_first(m, p, scaled_tol(m));
    expect_near(other.matrix(), fam.S.shifted(fam.lambda0).matrix(), 1e-12);
  }
}

TEST(HessianQ, MultiplicityInSGivesNullity) {
  // lambda0 = 0 is double in S; the rank-one coupling splits it in H0.
  RVector s(4);
  s << 0, 0, 1, -1;
  CMatrix k0 = CMatrix::Zero(1, 4);
  k0(0, 1) = 1.0;
  k0(0, 2) = 0.5;
  const PerturbationFamily fam =
      make_family(HermitianMatrix::diagonal(s), HermitianMatrix::identity(1), k0, unit(4, 0), 0.0);
  const HessianReport r = hessian_Q(fam);
  EXPECT_EQ(r.m, 2);
  EXPECT_EQ(r.nullity, 1);
  EXPECT_TRUE(r.theorem_index_holds);
  EXPECT_TRUE(r.theorem_nullity_holds);
}

TEST(HessianQ, RandomFamiliesSatisfyTheIndexTheorem) {
  Rng rng(101);
  const SuiteResult mixed = main_theorem_suite(rng, 150);
  EXPECT_TRUE(mixed.ok()) << mixed.first_failure;
  const SuiteResult positive = main_theorem_suite(rng, 50, true);
  EXPECT_TRUE(positive.ok()) << positive.first_failure;
}

TEST(BranchTrack, ConstantPath) {
  const PerturbationFamily fam = example_family();
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const BranchPath path = branch_track(fam, [&](double) { return fam.K0; }, grid);
  ASSERT_EQ(path.samples.size(), 3u);
  for (const BranchSample& s : path.samples) EXPECT_NEAR(s.lambda, 0.0, 1e-14);
}

TEST(BranchTrack, ZeroBranchIsConstantAlongTheFlow) {
  const PerturbationFamily fam = example_family(1.0);
  std::vector<double> grid;
  for (int i = 0; i <= 60; ++i) grid.push_back(3.0 * i / 60);
  const BranchPath path = branch_track(fam, [&](double t) { return CMatrix(std::sqrt(t) * fam.K0); }, grid);
  for (const BranchSample& s : path.samples) EXPECT_NEAR(s.lambda, 0.0, 1e-12);
}

TEST(BranchTrack, LateralRayFromAMaximum) {
  // At t = 2.5 the origin is a maximum of the branch, so it decreases along any ray.
  const PerturbationFamily fam = example_family(2.5);
  Rng rng(0);
  const CMatrix k1 = random_gaussian(2, 4, rng, false);
  const CMatrix k2 = random_gaussian(2, 4, rng, false);
  const CMatrix dir = (k1 + 0.3 * k2) / (k1 + 0.3 * k2).norm();
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.01 * i);
  const BranchPath path = branch_track(fam, [&](double s) { return CMatrix(fam.K0 + s * dir); }, grid);
  for (std::size_t i = 1; i < path.samples.size(); ++i) {
    EXPECT_LT(path.samples[i].lambda, path.samples[i - 1].lambda) << "s = " << grid[i];
  }
}

TEST(BranchTrack, DegenerateStart) {
  RVector s(3);
  s << 0, 0, 1;
  PerturbationFamily fam{HermitianMatrix::diagonal(s), HermitianMatrix::identity(1), CMatrix::Zero(1, 3), unit(3, 0),
                         0.0};
  const std::vector<double> grid{0.0};
  try {
    branch_track(fam, [&](double) { return fam.K0; }, grid);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateStart);
  }
}

TEST(FiniteDifferences, GradientVanishesAtTheBasePoint) {
  const PerturbationFamily fam = example_family(1.0);
  Rng rng(2);
  const std::vector<CMatrix> dirs{random_gaussian(2, 4, rng, false), random_gaussian(2, 4, rng, false)};
  for (double g : fd_gradient(fam, dirs, 1e-4)) EXPECT_LE(std::abs(g), 1e-6);
}

TEST(FiniteDifferences, GradientShrinksQuadraticallyInH) {
  Rng rng(6);
  const auto fam = [&] {
    for (;;) {
      if (auto f = draw_family(rng)) return *f;
    }
  }();
  const std::vector<CMatrix> dir{random_direction(fam, rng)};
  const double coarse = std::abs(fd_gradient(fam, dir, 1e-2)[0]);
  const double fine = std::abs(fd_gradient(fam, dir, 5e-3)[0]);
  // Central differences of a function with zero derivative: O(h^2).
  EXPECT_LE(fine, coarse / 3.0 + 1e-12);
}

TEST(FiniteDifferences, HessianMatchesTheQuadraticForm) {
  const PerturbationFamily fam = example_family(1.0);
  Rng rng(12);
  const std::vector<CMatrix> dirs{random_gaussian(2, 4, rng, false), random_gaussian(2, 4, rng, false)};
  const RMatrix fd = fd_hessian(fam, dirs, 1e-4);
  const RestrictedHessian rh = restricted_hessian(fam, dirs);
  const RMatrix analytic = 2.0 * rh.matrix;
  EXPECT_LE((fd - analytic).cwiseAbs().maxCoeff(), 1e-4 * analytic.cwiseAbs().maxCoeff());
}

TEST(FiniteDifferences, HessianVanishesOnTheAnnihilator) {
  const PerturbationFamily fam = example_family(1.0);
  Rng rng(13);
  const std::vector<CMatrix> dirs{random_direction(fam, rng, true)};
  EXPECT_LE(std::abs(fd_hessian(fam, dirs, 1e-4)(0, 0)), 1e-6);
}

TEST(FiniteDifferences, ReductionToTheLateralPart) {
  Rng rng(31);
  const SuiteResult r = criticality_suite(rng, 20);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(RestrictedHessian, FullRealSpanRecoversTheIndex) {
  for (double t : {0.1, 1.0, 2.5}) {
    const PerturbationFamily fam = example_family(t);
    std::vector<CMatrix> dirs;
    for (Index i = 0; i < fam.k(); ++i) dirs.push_back(unit(fam.k(), i) * fam.f.adjoint());
    const RestrictedHessian rh = restricted_hessian(fam, dirs);
    const HessianReport q = hessian_Q(fam);
    EXPECT_EQ(rh.projection_rank, 2);
    EXPECT_EQ(rh.morse_index, q.sigma + q.i_minus_omega);
    EXPECT_EQ(rh.nullity, q.m - 1);
  }
}

TEST(RestrictedHessian, AnnihilatorDirectionsGiveZero) {
  const PerturbationFamily fam = example_family(1.0);
  Rng rng(14);
  const std::vector<CMatrix> dirs{random_direction(fam, rng, true), random_direction(fam, rng, true)};
  const RestrictedHessian rh = restricted_hessian(fam, dirs);
  EXPECT_EQ(rh.projection_rank, 0);
  EXPECT_LE(rh.matrix.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(RestrictedHessian, ClassifiesTheExampleSurfaces) {
  Rng rng(0);
  const CMatrix k1 = random_gaussian(2, 4, rng, false);
  const CMatrix k2 = random_gaussian(2, 4, rng, false);
  const std::vector<CMatrix> dirs{k1, k2};
  EXPECT_EQ(restricted_hessian(example_family(0.1), dirs).morse_index, 0);
  EXPECT_EQ(restricted_hessian(example_family(1.0), dirs).morse_index, 1);
  EXPECT_EQ(restricted_hessian(example_family(2.5), dirs).morse_index, 2);
}

TEST(BranchEquation, ZeroPsiReturnsLambda0) {
  const PerturbationFamily fam = example_family(1.0);
  EXPECT_NEAR(branch_equation_solve(fam, fam.K0, CVector::Zero(2)), 0.0, 1e-15);
}

TEST(BranchEquation, MatchesTheEigensolver) {
  const PerturbationFamily fam = example_family(1.0);
  CVector psi(2);
  psi << 0.03, -0.02;
  const double z = branch_equation_solve(fam, fam.K0, psi);
  const double direct = branch_value(fam, fam.K0 + psi * fam.f.adjoint());
  EXPECT_NEAR(z, direct, 1e-10);
}

TEST(BranchEquation, QuadraticExpansionWithCubicRemainder) {
  const PerturbationFamily fam = example_family(1.0);
  const HermitianMatrix q = hessian_Q(fam).Q;
  CVector psi(2);
  psi << 0.02, 0.01;
  std::vector<double> rem;
  for (int i = 0; i < 3; ++i) {
    const double z = branch_equation_solve(fam, fam.K0, psi);
    rem.push_back(std::abs(z - (psi.adjoint() * q.matrix() * psi)(0).real()));
    psi /= 2;
  }
  // With K_a = K0 fixed the remainder is even quartic; it at least shrinks like a cube.
  EXPECT_GE(rem[0] / rem[1], 7.0);
  EXPECT_GE(rem[1] / rem[2], 7.0);
}

TEST(BranchEquation, RejectsNonAnnihilatingKa) {
  const PerturbationFamily fam = example_family(1.0);
  CMatrix k = fam.K0;
  k(0, 0) = 0.5;
  EXPECT_THROW(branch_equation_solve(fam, k, CVector::Zero(2)), Error);
}

TEST(BranchEquation, RandomFamilies) {
  Rng rng(41);
  const SuiteResult r = branch_equation_suite(rng, 40);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(SwitchIdentity, Examples) {
  const PerturbationFamily fam = example_family(1.0);
  EXPECT_LE(switch_identity_residual(fam, CMatrix::Zero(2, 4), 0.3), 1e-15);
  EXPECT_LE(switch_identity_residual(fam, fam.K0, fam.lambda0 - 0.3), 1e-10);
}

TEST(SwitchIdentity, RejectsPointsInTheSpectrum) {
  const PerturbationFamily fam = example_family(1.0);
  try {
    switch_identity_residual(fam, fam.K0, 1.0);  // eigenvalue of S
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResolventViolation);
  }
}

TEST(SwitchIdentity, RandomDraws) {
  Rng rng(43);
  const SuiteResult r = switch_identity_suite(rng, 50);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

}  // namespace
}  // namespace specshift
