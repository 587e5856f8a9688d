#pragma once

#include <string>

#include <gtest/gtest.h>

#include "specshift/family.hpp"
#include "specshift/graph.hpp"

namespace specshift::test {

inline std::string data_path(const std::string& name) { return std::string(SPECSHIFT_DATA_DIR) + "/" + name; }

inline RMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  RMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

// S = diag(0, 1, -1, -2), Omega = t I_2, K0 = [[0, .5, .5, 1.5], [0, 1, 2, 1]], f = e1.
inline PerturbationFamily example_family(double t = 1.0) {
  RVector s(4);
  s << 0, 1, -1, -2;
  RVector om = RVector::Constant(2, t);
  const RMatrix k0 = real_matrix({{0, 0.5, 0.5, 1.5}, {0, 1, 2, 1}});
  CVector f = CVector::Zero(4);
  f(0) = 1.0;
  return make_family(HermitianMatrix::diagonal(s), HermitianMatrix::diagonal(om), k0.cast<cplx>(), f, 0.0);
}

// Triangle 1-2-3 with a pendant vertex 0 attached to 1; q = (1, 2, 4, 5).
inline WeightedGraph lasso() {
  return WeightedGraph(4, {{0, 1, -1.0}, {1, 2, -1.0}, {1, 3, -1.0}, {2, 3, -1.0}}, {1.0, 2.0, 4.0, 5.0});
}

inline void expect_near(const CMatrix& a, const CMatrix& b, double tol) {
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.cols(), b.cols());
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), tol) << "a =\n" << a << "\nb =\n" << b;
}

}  // namespace specshift::test
