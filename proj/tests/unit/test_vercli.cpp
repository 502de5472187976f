#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "tnv/cli/suites.hpp"
#include "tnv/errors.hpp"

using namespace tnv;
using cli::Params;
using report::Status;

namespace {

using json = nlohmann::json;

// Enough of JSON Schema for the report schema: type, required, properties,
// items and enum.
std::string validate(const json& schema, const json& v, const std::string& path) {
  if (schema.contains("type")) {
    std::string t = schema["type"];
    bool ok = (t == "object" && v.is_object()) || (t == "array" && v.is_array()) || (t == "string" && v.is_string()) ||
              (t == "integer" && v.is_number_integer()) || (t == "number" && v.is_number());
    if (!ok) return path + ": expected " + t;
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == v;
    if (!found) return path + ": not in enum";
  }
  if (schema.contains("required"))
    for (const auto& k : schema["required"])
      if (!v.contains(k.get<std::string>())) return path + ": missing " + k.get<std::string>();
  if (schema.contains("properties"))
    for (const auto& [k, sub] : schema["properties"].items())
      if (v.contains(k)) {
        auto err = validate(sub, v[k], path + "." + k);
        if (!err.empty()) return err;
      }
  if (schema.contains("items"))
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto err = validate(schema["items"], v[i], path + "[" + std::to_string(i) + "]");
      if (!err.empty()) return err;
    }
  return {};
}

json load_schema() {
  std::ifstream f(TNV_REPORT_SCHEMA);
  return json::parse(f);
}

const report::Check* find(const report::Report& rep, const std::string& id) {
  for (const auto& c : rep.checks)
    if (c.id == id) return &c;
  return nullptr;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(ParseRational, Forms) {
  EXPECT_EQ(cli::parse_rational("3/4"), mpq_class(3, 4));
  EXPECT_EQ(cli::parse_rational("-2"), mpq_class(-2));
  EXPECT_EQ(cli::parse_rational("0.25"), mpq_class(1, 4));
  EXPECT_EQ(cli::parse_rational("6/8"), mpq_class(3, 4));
  EXPECT_THROW(cli::parse_rational("x"), BadParams);
  EXPECT_THROW(cli::parse_rational("1/0"), BadParams);
  EXPECT_THROW(cli::parse_rational(""), BadParams);
}

TEST(ParseRange, Forms) {
  auto r = cli::parse_range("-3:5:1/2");
  EXPECT_EQ(r.from, -3);
  EXPECT_EQ(r.to, 5);
  EXPECT_EQ(r.step, mpq_class(1, 2));
  EXPECT_THROW(cli::parse_range("1:0:1"), BadParams);
  EXPECT_THROW(cli::parse_range("0:1:0"), BadParams);
  EXPECT_THROW(cli::parse_range("0:1"), BadParams);
  EXPECT_FALSE(cli::default_range("charge-convergence"));
}

TEST(RunSuite, Errors) {
  EXPECT_THROW(cli::run_suite("nope", {}, 0), UnknownSuite);
  Params p;
  p.l = mpq_class(0);
  EXPECT_THROW(cli::run_suite("killing", p, 0), BadParams);
  Params q;
  q.c0 = mpq_class(-1);
  EXPECT_THROW(cli::run_suite("reduction", q, 0), BadParams);
  Params n;
  n.n = 0;
  EXPECT_THROW(cli::run_suite("killing", n, 0), BadParams);
}

TEST(RunSuite, KillingSixPasses) {
  Params p;
  p.m = mpq_class(1);
  p.l = mpq_class(1);
  auto rep = cli::run_suite("killing", p, 0);
  ASSERT_EQ(rep.checks.size(), 6u);
  for (const auto& c : rep.checks) EXPECT_EQ(c.status, Status::pass) << c.id;
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.suite, "killing");
}

TEST(RunSuite, TimelikeReportsDisplayMismatch) {
  auto rep = cli::run_suite("curvature-timelike", {}, 0);
  EXPECT_TRUE(rep.ok());
  auto* c = find(rep, "timelike-curvature-forms");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->status, Status::mismatch_reported);
}

TEST(RunSuite, InstanceChecks) {
  Params p;
  p.c0 = mpq_class(1);
  p.c1 = mpq_class(8);
  p.eps = 1;
  auto rep = cli::run_suite("reduction", p, 0);
  EXPECT_TRUE(rep.ok());
  EXPECT_NE(find(rep, "instance-spacelike-parameter-map"), nullptr);
}

TEST(Report, JsonMatchesSchema) {
  auto schema = load_schema();
  for (const char* s : {"killing", "curvature-timelike"}) {
    auto rep = cli::run_suite(s, {}, 3);
    auto j = json::parse(rep.to_json());
    EXPECT_EQ(validate(schema, j, "$"), "") << s;
    EXPECT_EQ(j["seed"], 3);
  }
  // the validator itself rejects a malformed report
  json bad = json::parse(cli::run_suite("killing", {}, 0).to_json());
  bad["checks"][0]["status"] = "ok";
  EXPECT_NE(validate(schema, bad, "$"), "");
  bad.erase("suite");
  EXPECT_NE(validate(schema, bad, "$"), "");
}

TEST(Report, Csv) {
  auto rep = cli::run_suite("killing", {}, 0);
  auto ls = lines(rep.to_csv());
  ASSERT_EQ(ls.size(), 7u);
  EXPECT_EQ(ls[0], "suite,id,paper_anchor,status,residual,ms");
}

TEST(Report, Deterministic) {
  auto a = cli::run_suite("all", {}, 11).to_json();
  auto b = cli::run_suite("all", {}, 11).to_json();
  EXPECT_EQ(a, b);
}

TEST(ModelFile, Loads) {
  std::string path = testing::TempDir() + "tnv_model.json";
  {
    std::ofstream f(path);
    f << R"({"name": "extension", "params": {"m": "1/2", "l": 3, "n": 2}, "branch": "psi-double-prime"})";
  }
  auto p = cli::load_model_file(path, {});
  EXPECT_EQ(p.model, "extension");
  EXPECT_EQ(*p.m, mpq_class(1, 2));
  EXPECT_EQ(*p.l, mpq_class(3));
  EXPECT_EQ(p.n, 2);
  EXPECT_EQ(p.branch, catalog::Branch::psi_double_prime);
  auto rep = cli::run_suite("killing", p, 0);
  EXPECT_TRUE(rep.ok());
  std::remove(path.c_str());
  EXPECT_THROW(cli::load_model_file(path, {}), BadParams);
}

TEST(Tables, F) {
  Params p;
  p.m = mpq_class(1);
  p.l = mpq_class(1);
  auto ls = lines(cli::emit_table("f", p, cli::default_range("f")));
  ASSERT_EQ(ls.size(), 18u);  // header + 17 rows from -3 to 5 step 1/2
  EXPECT_EQ(ls[0].substr(0, 4), "r,f,");
  // r+ = 1 + sqrt 2 lies between 2 and 5/2, r- = 1 - sqrt 2 between -1/2 and 0
  auto sign_at = [&](std::size_t row) { return ls[row].substr(ls[row].find(',') + 1, 1) == "-" ? -1 : 1; };
  EXPECT_EQ(sign_at(11), -1);  // r = 2
  EXPECT_EQ(sign_at(12), 1);   // r = 5/2
  EXPECT_EQ(sign_at(6), 1);    // r = -1/2
  EXPECT_EQ(sign_at(7), -1);   // r = 0
}

TEST(Tables, KretschmannAtOrigin) {
  Params p;
  p.m = mpq_class(1, 2);
  p.l = mpq_class(3);
  auto out = cli::emit_table("K", p, cli::parse_range("0:0:1"));
  auto ls = lines(out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[1].substr(0, 7), "0,0.576") << ls[1];
  EXPECT_THROW(cli::emit_table("nope", p, std::nullopt), BadParams);
}

TEST(Tables, ChargeConvergence) {
  Params p;
  p.m = mpq_class(1);
  p.l = mpq_class(1);
  auto ls = lines(cli::emit_table("charge-convergence", p, std::nullopt));
  ASSERT_EQ(ls.size(), 5u);
  EXPECT_EQ(ls[0], "r,komar,komar_error,dual,dual_error");
}

TEST(Xref, Verdicts) {
  auto rep = cli::cross_reference(0);
  EXPECT_TRUE(rep.ok());
  for (const char* id : {"xref-timelike-curvature-forms", "xref-r-prime-coefficient", "xref-kretschmann-duplicated-label"}) {
    auto* c = find(rep, id);
    ASSERT_NE(c, nullptr) << id;
    EXPECT_EQ(c->status, Status::mismatch_reported) << id;
  }
  auto* c = find(rep, "xref-generalized-line-element");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->status, Status::pass);
}
