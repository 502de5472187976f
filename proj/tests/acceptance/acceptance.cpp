// One line per acceptance criterion; exit status is non-zero if any fails.
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "tnv/cli/suites.hpp"

using namespace tnv;
using report::Check;
using report::Status;

namespace {

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

struct Criterion {
  int number;
  std::string title;
  std::vector<Check> checks;
  std::size_t expected_min;  // guards against a selection that silently matches nothing
};

std::vector<Check> select(const report::Report& rep, const std::function<bool(const std::string&)>& pred) {
  std::vector<Check> out;
  for (const auto& c : rep.checks)
    if (pred(c.id)) out.push_back(c);
  return out;
}

std::vector<Check> concat(std::vector<Check> a, const std::vector<Check>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool report_line(const Criterion& c) {
  std::size_t failed = 0, mismatches = 0;
  std::string first;
  for (const auto& k : c.checks) {
    if (k.status == Status::fail) {
      if (!failed) first = k.id + ": " + k.residual;
      ++failed;
    }
    if (k.status == Status::mismatch_reported) ++mismatches;
  }
  bool ok = failed == 0 && c.checks.size() >= c.expected_min;
  std::printf("criterion %d (%s): %s, %zu checks, %zu failed, %zu mismatch-reported", c.number, c.title.c_str(),
              ok ? "PASS" : "FAIL", c.checks.size(), failed, mismatches);
  if (c.checks.size() < c.expected_min) std::printf("; expected at least %zu checks", c.expected_min);
  if (failed) std::printf("; first failure %s", first.c_str());
  std::printf("\n");
  return ok;
}

}  // namespace

int main() {
  const std::uint64_t seed = 1;
  cli::Params none;
  auto ext = cli::run_suite("extensions", none, seed);
  auto sp = cli::run_suite("curvature-spacelike", none, seed);
  auto tl = cli::run_suite("curvature-timelike", none, seed);
  auto red = cli::run_suite("reduction", none, seed);
  auto kr = cli::run_suite("kretschmann", none, seed);
  auto ch = cli::run_suite("charges", none, seed);
  auto fo = cli::run_suite("forms", none, seed);
  auto ki = cli::run_suite("killing", none, seed);
  report::Report props;
  props.checks = cli::property_checks(seed, 200);

  std::vector<Criterion> cs;
  cs.push_back({1, "vacuum, both pipelines, under 60 s",
                select(ext, [](const std::string& id) { return starts_with(id, "tn-vacuum-"); }), 3});
  cs.push_back({2, "horizon-regular extensions",
                select(ext, [](const std::string& id) { return starts_with(id, "ext-"); }), 14});
  auto displays = [](const std::string& id) {
    return id.find("connection") != std::string::npos || id.find("riemann") != std::string::npos ||
           id.find("einstein") != std::string::npos || id.find("curvature-forms") != std::string::npos;
  };
  cs.push_back({3, "displayed connection, Riemann and Einstein components",
                concat(select(sp, displays), select(tl, displays)), 10});
  cs.push_back({4, "D and F equations, numeric oracle, constant R",
                select(red,
                       [](const std::string& id) {
                         return starts_with(id, "d-") || starts_with(id, "f-") || starts_with(id, "constant-R-");
                       }),
                30});
  cs.push_back({5, "transform and parameter map",
                select(red, [](const std::string& id) { return starts_with(id, "transform-"); }), 14});
  cs.push_back({6, "Kretschmann scalar", kr.checks, 10});
  cs.push_back({7, "Komar mass and dual charge",
                select(ch,
                       [](const std::string& id) {
                         return id == "charges-komar-limit" || id == "charges-dual-limit" ||
                                id == "charges-komar-table" || id == "charges-dual-table";
                       }),
                4});
  cs.push_back({8, "structure equations, Lie derivatives, Killing algebra",
                concat(select(fo,
                              [](const std::string& id) {
                                return id == "forms-structure-equations" || id == "forms-lie-dpsi" ||
                                       starts_with(id, "forms-dual-structure");
                              }),
                       select(ki, [](const std::string& id) { return starts_with(id, "commutators-"); })),
                6});
  cs.push_back({9, "property sweeps, 200 instances each",
                select(props,
                       [](const std::string& id) {
                         return id == "property-d-squared" || id == "property-cartan-formula" ||
                                id == "property-hodge-double-star" || id == "property-bianchi" ||
                                id == "property-ring-axioms";
                       }),
                5});

  bool all = true;
  for (const auto& c : cs) all = report_line(c) && all;
  return all ? 0 : 1;
}
