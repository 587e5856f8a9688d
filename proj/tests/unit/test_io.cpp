#include <gtest/gtest.h>

#include "specshift/error.hpp"
#include "specshift/io.hpp"
#include "specshift/random.hpp"
#include "support.hpp"

namespace specshift {
namespace {

using io::json;

TEST(MatrixJson, RoundTripIsExact) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianMatrix m = random_hermitian(1 + trial % 6, rng, trial % 2 == 0);
    const HermitianMatrix back = io::matrix_from_json(json::parse(io::to_json(m).dump()));
    EXPECT_EQ((back.matrix() - m.matrix()).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(MatrixJson, ImaginaryPartIsOptional) {
  const HermitianMatrix m = io::matrix_from_json(json::parse(R"({"n": 2, "re": [[1, 2], [2, 3]]})"));
  EXPECT_EQ(m(0, 1), cplx(2, 0));
}

TEST(MatrixJson, ParseErrors) {
  for (const char* bad : {R"({"re": [[1]]})", R"({"n": 2, "re": [[1, 2]]})", R"({"n": 1, "re": [["x"]]})",
                          R"({"n": 2, "re": [[1, 2], [3]]})", R"([1, 2])"}) {
    try {
      io::matrix_from_json(json::parse(bad));
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Parse) << bad;
    }
  }
}

TEST(MatrixJson, NonHermitianIsAnInvariantError) {
  try {
    io::matrix_from_json(json::parse(R"({"n": 2, "re": [[1, 2], [0, 3]]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(FamilyJson, ShippedExampleAndRoundTrip) {
  const PerturbationFamily fam = io::family_from_json(io::read_json_file(test::data_path("example_family.json")));
  EXPECT_EQ(fam.n(), 4);
  EXPECT_EQ(fam.k(), 2);
  const PerturbationFamily back = io::family_from_json(json::parse(io::to_json(fam).dump()));
  EXPECT_EQ((back.K0 - fam.K0).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((back.f - fam.f).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(back.lambda0, fam.lambda0);
}

TEST(FamilyJson, InvalidFamilyNamesTheInvariant) {
  json j = io::read_json_file(test::data_path("example_family.json"));
  j["f"] = {{"re", {0, 1, 0, 0}}};
  try {
    io::family_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidFamily);
    EXPECT_FALSE(e.invariant().empty());
  }
}

TEST(GraphJson, ReadsCyclePhases) {
  json j = io::read_json_file(test::data_path("lasso.json"));
  EXPECT_FALSE(io::graph_from_json(j).frame.has_value());
  j["cycle_alpha"] = {{"edges", {{2, 3}}}, {"alpha0", {0.0}}, {"alpha", {0.5}}};
  const io::GraphFile gf = io::graph_from_json(j);
  ASSERT_TRUE(gf.frame.has_value());
  EXPECT_EQ(gf.frame->beta(), 1);
  EXPECT_DOUBLE_EQ(gf.frame->alpha(0), 0.5);
  const io::GraphFile back = io::graph_from_json(json::parse(io::to_json(gf.graph, gf.frame).dump()));
  EXPECT_EQ(back.graph.edges().size(), 4u);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(-2.0), "-2");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(std::stod(io::format_double(x)), x);
}

}  // namespace
}  // namespace specshift
