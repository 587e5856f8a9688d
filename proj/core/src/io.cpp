#include "specshift/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "specshift/error.hpp"

namespace specshift::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) parse_fail("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) parse_fail(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) parse_fail(where + " must be an integer");
  return j.get<int>();
}

RMatrix real_rows(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) parse_fail(where + " must be a nonempty array of rows");
  const auto rows = static_cast<Index>(j.size());
  if (!j[0].is_array()) parse_fail(where + " must be an array of arrays");
  const auto cols = static_cast<Index>(j[0].size());
  RMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) parse_fail(where + " rows must have equal length");
    for (Index c = 0; c < cols; ++c) m(i, c) = number(row[static_cast<std::size_t>(c)], where);
  }
  return m;
}

RVector real_list(const json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where + " must be an array");
  RVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = number(j[i], where);
  return v;
}

json rows_of(const RMatrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    out.push_back(std::move(row));
  }
  return out;
}

json list_of(const RVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_fail(path.string() + ": " + e.what());
  }
}

CMatrix complex_matrix_from_json(const json& j) {
  const RMatrix re = real_rows(field(j, "re"), "re");
  CMatrix m = re.cast<cplx>();
  if (j.contains("im") && !j["im"].is_null()) {
    const RMatrix im = real_rows(j["im"], "im");
    if (im.rows() != re.rows() || im.cols() != re.cols()) parse_fail("im must have the shape of re");
    m.imag() = im;
  }
  return m;
}

json complex_matrix_to_json(const CMatrix& m) {
  json j;
  j["re"] = rows_of(m.real());
  if (!m.imag().isZero(0.0)) j["im"] = rows_of(m.imag());
  return j;
}

HermitianMatrix matrix_from_json(const json& j) {
  const int n = integer(field(j, "n"), "n");
  const CMatrix m = complex_matrix_from_json(j);
  if (m.rows() != n || m.cols() != n) parse_fail("matrix must be n x n with n = " + std::to_string(n));
  return HermitianMatrix(m);
}

json to_json(const HermitianMatrix& m) {
  json j = complex_matrix_to_json(m.matrix());
  j["n"] = m.dim();
  return j;
}

CVector vector_from_json(const json& j) {
  const RVector re = real_list(field(j, "re"), "re");
  CVector v = re.cast<cplx>();
  if (j.contains("im") && !j["im"].is_null()) {
    const RVector im = real_list(j["im"], "im");
    if (im.size() != re.size()) parse_fail("im must have the length of re");
    v.imag() = im;
  }
  return v;
}

json vector_to_json(const CVector& v) {
  json j;
  j["re"] = list_of(v.real());
  if (!v.imag().isZero(0.0)) j["im"] = list_of(v.imag());
  return j;
}

PerturbationFamily family_from_json(const json& j, double rel_tol) {
  HermitianMatrix s = matrix_from_json(field(j, "S"));
  HermitianMatrix omega = matrix_from_json(field(j, "Omega"));
  CMatrix k0 = complex_matrix_from_json(field(j, "K0"));
  const double lambda0 = number(field(j, "lambda0"), "lambda0");
  std::optional<CVector> f;
  if (j.contains("f") && !j["f"].is_null()) f = vector_from_json(j["f"]);
  return make_family(std::move(s), std::move(omega), std::move(k0), std::move(f), lambda0, rel_tol);
}

json to_json(const PerturbationFamily& fam) {
  return {{"S", to_json(fam.S)},
          {"Omega", to_json(fam.Omega)},
          {"K0", complex_matrix_to_json(fam.K0)},
          {"f", vector_to_json(fam.f)},
          {"lambda0", fam.lambda0}};
}

GraphFile graph_from_json(const json& j) {
  const int n = integer(field(j, "vertices"), "vertices");
  const RVector q = real_list(field(j, "potentials"), "potentials");
  const json& edge_list = field(j, "edges");
  if (!edge_list.is_array()) parse_fail("edges must be an array");
  std::vector<Edge> edges;
  for (const json& e : edge_list) {
    edges.push_back({integer(field(e, "u"), "edge u"), integer(field(e, "v"), "edge v"), number(field(e, "w"), "edge w")});
  }
  GraphFile out{WeightedGraph(n, std::move(edges), std::vector<double>(q.begin(), q.end())), std::nullopt};

  if (j.contains("cycle_alpha") && !j["cycle_alpha"].is_null()) {
    const json& c = j["cycle_alpha"];
    const json& pairs = field(c, "edges");
    if (!pairs.is_array()) parse_fail("cycle_alpha.edges must be an array");
    std::vector<OrientedEdge> cycle;
    for (const json& p : pairs) {
      if (!p.is_array() || p.size() != 2) parse_fail("cycle_alpha.edges entries are [u, v]");
      cycle.push_back({integer(p[0], "cycle edge"), integer(p[1], "cycle edge")});
    }
    const auto beta = static_cast<Index>(cycle.size());
    RVector alpha0 = c.contains("alpha0") ? real_list(c["alpha0"], "alpha0") : RVector(RVector::Zero(beta));
    RVector alpha = c.contains("alpha") ? real_list(c["alpha"], "alpha") : alpha0;
    out.frame = frame_from_cycle_edges(out.graph, std::move(cycle), std::move(alpha0), std::move(alpha));
  }
  return out;
}

json to_json(const WeightedGraph& g, const std::optional<MagneticFrame>& frame) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({{"u", e.u}, {"v", e.v}, {"w", e.weight}});
  json j{{"vertices", g.num_vertices()}, {"potentials", g.potentials()}, {"edges", std::move(edges)}};
  if (frame) {
    json pairs = json::array();
    for (const OrientedEdge& e : frame->cycle_edges) pairs.push_back({e.from, e.to});
    j["cycle_alpha"] = {{"edges", std::move(pairs)}, {"alpha0", list_of(frame->alpha0)}, {"alpha", list_of(frame->alpha)}};
  }
  return j;
}

json to_json(const Inertia& in) {
  return {{"minus", in.minus}, {"zero", in.zero}, {"plus", in.plus}, {"ambiguous", in.ambiguous}, {"tol", in.tol}};
}

json to_json(const HaynsworthReport& r) {
  return {{"inertia_M", to_json(r.inertia_M)},
          {"inertia_A", to_json(r.inertia_A)},
          {"inertia_D", to_json(r.inertia_D)},
          {"inertia_schur_D", to_json(r.inertia_schur_D)},
          {"inertia_schur_A", to_json(r.inertia_schur_A)},
          {"kernel_condition_D_holds", r.kernel_condition_D_holds},
          {"kernel_condition_A_holds", r.kernel_condition_A_holds},
          {"identity_primal_holds", r.identity_primal_holds},
          {"identity_dual_holds", r.identity_dual_holds}};
}

json to_json(const HessianReport& r) {
  return {{"Q", to_json(r.Q)},
          {"morse_index", r.morse_index},
          {"nullity", r.nullity},
          {"sigma", r.sigma},
          {"i_minus_omega", r.i_minus_omega},
          {"m", r.m},
          {"theorem_index_holds", r.theorem_index_holds},
          {"theorem_nullity_holds", r.theorem_nullity_holds},
          {"ambiguous", r.ambiguous}};
}

json real_matrix_to_json(const RMatrix& m) { return rows_of(m); }

json to_json(const MagneticFrame& frame) {
  json tree = json::array();
  for (const OrientedEdge& e : frame.tree_edges) tree.push_back({e.from + 1, e.to + 1});
  json cycle = json::array();
  for (const OrientedEdge& e : frame.cycle_edges) cycle.push_back({e.from + 1, e.to + 1});
  return {{"tree_edges", std::move(tree)}, {"cycle_edges", std::move(cycle)},
          {"alpha0", list_of(frame.alpha0)}, {"alpha", list_of(frame.alpha)}};
}

json to_json(const NodalReport& r) {
  json j{{"n", r.level},
         {"lambda", r.lambda},
         {"flip_count", r.flip_count},
         {"surplus", r.surplus},
         {"morse_index_fd", r.morse_index_fd},
         {"morse_index_Q", r.morse_index_Q},
         {"nullity", r.nullity},
         {"theorem_holds", r.theorem_holds},
         {"assumptions_met", r.assumptions_met}};
  if (!r.assumptions_met) {
    j["assumption_note"] = r.assumption_note;
    return j;
  }
  j["nullity_Q"] = r.nullity_Q;
  j["omega_minus"] = r.omega_minus;
  j["tree_flip_count"] = r.tree_flip_count;
  j["tree_level"] = r.tree_level;
  j["hessian_fd"] = rows_of(r.hessian_fd);
  j["hessian_analytic"] = rows_of(r.hessian_analytic);
  return j;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace specshift::io
