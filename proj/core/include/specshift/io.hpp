#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "specshift/family.hpp"
#include "specshift/graph.hpp"
#include "specshift/hessian.hpp"
#include "specshift/nodal.hpp"
#include "specshift/schur.hpp"

namespace specshift::io {

using json = nlohmann::json;

// All readers throw Error(ErrorCode::Parse, ...) on malformed input and the
// domain constructors' errors (NotHermitian, InvalidFamily, ...) on
// well-formed input that violates an invariant.

json read_json_file(const std::filesystem::path& path);

// {"n": int, "re": [[...]], "im": [[...]]}, "im" optional.
HermitianMatrix matrix_from_json(const json& j);
json to_json(const HermitianMatrix& m);

// {"re": [[...]], "im": [[...]]}, rectangular.
CMatrix complex_matrix_from_json(const json& j);
json complex_matrix_to_json(const CMatrix& m);

// {"re": [...], "im": [...]}
CVector vector_from_json(const json& j);
json vector_to_json(const CVector& v);

// {"S": matrix, "Omega": matrix, "K0": complex-matrix, "f": vector, "lambda0": number}
PerturbationFamily family_from_json(const json& j, double rel_tol = kDefaultRelTol);
json to_json(const PerturbationFamily& fam);

struct GraphFile {
  WeightedGraph graph;
  std::optional<MagneticFrame> frame;  // present when the file has "cycle_alpha"
};

// {"vertices": int, "potentials": [...], "edges": [{"u", "v", "w"}],
//  "cycle_alpha": {"edges": [[u, v], ...], "alpha0": [...], "alpha": [...]}}
GraphFile graph_from_json(const json& j);
json to_json(const WeightedGraph& g, const std::optional<MagneticFrame>& frame = std::nullopt);

json to_json(const Inertia& in);
json to_json(const HaynsworthReport& r);
json to_json(const HessianReport& r);
// Vertices and levels are 1-based in reports.
json to_json(const NodalReport& r);
json to_json(const MagneticFrame& frame);

json real_matrix_to_json(const RMatrix& m);

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double x);

}  // namespace specshift::io
