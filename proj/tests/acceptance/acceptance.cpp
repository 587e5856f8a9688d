// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli/commands.hpp"
#include "specshift/hessian.hpp"
#include "specshift/io.hpp"
#include "specshift/nodal.hpp"
#include "specshift/selftest.hpp"

namespace {

using namespace specshift;
using nlohmann::json;

const std::string kFamily = std::string(SPECSHIFT_DATA_DIR) + "/example_family.json";
const std::string kLasso = std::string(SPECSHIFT_DATA_DIR) + "/lasso.json";

struct Verdict {
  bool ok = false;
  std::string detail;
};

struct Cli {
  int code;
  std::string out;
  std::string err;
};

Cli cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

PerturbationFamily example_family(double t) {
  PerturbationFamily fam = io::family_from_json(io::read_json_file(kFamily));
  fam.Omega = fam.Omega.scaled(t);
  validate_family(fam);
  return fam;
}

std::string counts(const SuiteResult& r) {
  std::ostringstream os;
  os << r.passed << "/" << r.trials() << " passed, " << r.discarded << " discarded";
  if (!r.first_failure.empty()) os << ", first failure: " << r.first_failure;
  return os.str();
}

double discard_rate(const SuiteResult& r) {
  const int drawn = r.trials() + r.discarded;
  return drawn > 0 ? static_cast<double>(r.discarded) / drawn : 0.0;
}

Verdict ac1() {
  const double ts[] = {0.1, 1.0, 2.5};
  std::ostringstream os;
  bool ok = true;
  for (int i = 0; i < 3; ++i) {
    const PerturbationFamily fam = example_family(ts[i]);
    const SpectralShift s = spectral_shift(fam);
    const HessianReport q = hessian_Q(fam);
    ok = ok && s.sigma == i && q.morse_index == i && q.nullity == 0;
    os << (i ? "; " : "") << "t=" << ts[i] << ": sigma " << s.sigma << ", i-(Q) " << q.morse_index << ", i0(Q) "
       << q.nullity;
  }
  return {ok, os.str()};
}

Verdict ac2() {
  const Cli r = cli({"flow", kFamily, "--tmin", "0", "--tmax", "3", "--steps", "301"});
  if (r.code != 0) return {false, "flow exited with " + std::to_string(r.code) + ": " + r.err};
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  double worst_zero = 0.0;
  double worst_drop = 0.0;
  std::vector<double> prev;
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<double> v;
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');
    while (std::getline(cells, cell, ',')) v.push_back(std::stod(cell));
    auto zero = std::min_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    worst_zero = std::max(worst_zero, std::abs(*zero));
    v.erase(zero);
    for (std::size_t i = 0; i < prev.size() && i < v.size(); ++i) worst_drop = std::max(worst_drop, prev[i] - v[i]);
    prev = v;
    ++rows;
  }
  std::ostringstream os;
  os << rows << " rows, max |zero branch| " << worst_zero << ", max decrease of the others " << worst_drop;
  return {rows == 301 && worst_zero <= 1e-12 && worst_drop <= 0.0, os.str()};
}

Verdict ac3() {
  const std::pair<const char*, const char*> cases[] = {{"0.1", "minimum"}, {"1", "saddle"}, {"2.5", "maximum"}};
  std::ostringstream os;
  bool ok = true;
  for (const auto& [t, expected] : cases) {
    const Cli r = cli({"surface", kFamily, "--omega-scale", t, "--seed", "0", "--range", "0.5", "--grid", "21",
                       "--format", "json"});
    if (r.code != 0) return {false, std::string("surface exited with ") + std::to_string(r.code) + ": " + r.err};
    const json j = json::parse(r.out);
    const std::string kind = j["classification"];
    const double err = j["fd_relative_error"];
    ok = ok && kind == expected && err <= 1e-4;
    os << (os.tellp() > 0 ? "; " : "") << "t=" << t << ": " << kind << " (FD rel. error " << err << ")";
  }
  return {ok, os.str()};
}

Verdict ac4() {
  Rng rng(4);
  const SuiteResult r = main_theorem_suite(rng, 500);
  const double rate = discard_rate(r);
  return {r.passed >= 500 && r.failed == 0 && rate < 0.05,
          counts(r) + ", discard rate " + std::to_string(100 * rate) + "%"};
}

Verdict ac5() {
  Rng rng(5);
  const SuiteResult r = haynsworth_suite(rng, 500, 120);
  return {r.passed >= 500 && r.failed == 0, counts(r) + " (120 with singular D)"};
}

Verdict ac6() {
  Rng rng(6);
  const SuiteResult r = criticality_suite(rng, 50);
  return {r.passed >= 50 && r.failed == 0, counts(r)};
}

Verdict ac7() {
  Rng rng(7);
  const SuiteResult r = branch_equation_suite(rng, 100);
  return {r.passed >= 100 && r.failed == 0, counts(r)};
}

Verdict ac8() {
  Rng rng(8);
  const SuiteResult r = switch_identity_suite(rng, 100);
  return {r.passed >= 100 && r.failed == 0, counts(r)};
}

Verdict ac9() {
  const io::GraphFile gf = io::graph_from_json(io::read_json_file(kLasso));
  std::ostringstream os;
  bool ok = true;
  os << "lasso surplus/FD/Q:";
  for (const NodalReport& r : nodal_reports(gf.graph, spanning_tree(gf.graph))) {
    ok = ok && r.assumptions_met && r.surplus == r.morse_index_fd && r.surplus == r.morse_index_Q &&
         (r.surplus == 0 || r.surplus == 1);
    os << ' ' << r.surplus << '/' << r.morse_index_fd << '/' << r.morse_index_Q;
  }
  Rng rng(9);
  const SuiteResult s = magnetic_nodal_suite(rng, 200);
  ok = ok && s.passed >= 200 && s.failed == 0;
  os << "; random graphs: " << counts(s);
  return {ok, os.str()};
}

Verdict ac10() {
  Rng rng(10);
  const SuiteResult r = fiedler_suite(rng, 100);
  return {r.passed >= 100 && r.failed == 0, counts(r)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    double limit;  // seconds
    std::function<Verdict()> check;
  };
  const Criterion criteria[] = {
      {"AC1", "example family: spectral shift, Morse index and nullity of Q", 1, ac1},
      {"AC2", "spectral flow: zero branch constant, other branches nondecreasing", 1, ac2},
      {"AC3", "surface center classification and FD vs analytic Hessian", 5, ac3},
      {"AC4", "index and nullity theorem on random families", 60, ac4},
      {"AC5", "inertia additivity on random block matrices", 30, ac5},
      {"AC6", "criticality and reduction to the lateral part", 30, ac6},
      {"AC7", "branch equation vs eigensolver, cubic remainder", 10, ac7},
      {"AC8", "switch identity residual", 10, ac8},
      {"AC9", "nodal surplus equals the magnetic Morse index", 120, ac9},
      {"AC10", "sign flips on trees", 20, ac10},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = v.ok && secs < c.limit;
    if (!ok) ++failures;
    std::printf("%-4s %s  %s [%.3f s, limit %.0f s]: %s\n", c.id, ok ? "PASS" : "FAIL", c.title, secs, c.limit,
                v.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
