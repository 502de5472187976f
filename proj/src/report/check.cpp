#include "tnv/report/check.hpp"

#include <sstream>

#include <json.hpp>

#include "tnv/sym/numeric.hpp"

namespace tnv::report {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::mismatch_reported:
      return "mismatch-reported";
  }
  return "fail";
}

const char* engine_version() { return "tnv 1.0.0"; }

bool Report::ok() const {
  for (const auto& c : checks) {
    if (c.status == Status::fail) return false;
  }
  return true;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["engine_version"] = engine_version;
  j["seed"] = seed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json o;
    o["id"] = c.id;
    o["paper_anchor"] = c.anchor;
    o["status"] = to_string(c.status);
    o["residual"] = c.residual;
    o["ms"] = c.ms;
    j["checks"].push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}
}  // namespace

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "suite,id,paper_anchor,status,residual,ms\n";
  for (const auto& c : checks) {
    os << csv_field(suite) << ',' << csv_field(c.id) << ',' << csv_field(c.anchor) << ',' << to_string(c.status)
       << ',' << csv_field(c.residual) << ',' << c.ms << '\n';
  }
  return os.str();
}

namespace {

Check residual_check(std::string id, std::string anchor, const std::vector<std::pair<std::string, sym::Expr>>& rs,
                     std::uint64_t seed, Status on_nonzero) {
  Check c{std::move(id), std::move(anchor), Status::pass, "0", 0.0};
  std::string text;
  for (const auto& [label, e] : rs) {
    if (sym::is_zero(e, seed)) continue;
    if (!text.empty()) text += "; ";
    text += label.empty() ? e.str() : label + ": " + e.str();
  }
  if (!text.empty()) {
    c.status = on_nonzero;
    c.residual = text;
  }
  return c;
}

}  // namespace

Check zero_check(std::string id, std::string anchor, const sym::Expr& residual, std::uint64_t seed) {
  return residual_check(std::move(id), std::move(anchor), {{"", residual}}, seed, Status::fail);
}

Check zero_check(std::string id, std::string anchor, const std::vector<std::pair<std::string, sym::Expr>>& residuals,
                 std::uint64_t seed) {
  return residual_check(std::move(id), std::move(anchor), residuals, seed, Status::fail);
}

Check display_check(std::string id, std::string anchor, const sym::Expr& residual, std::uint64_t seed) {
  return residual_check(std::move(id), std::move(anchor), {{"", residual}}, seed, Status::mismatch_reported);
}

Check display_check(std::string id, std::string anchor,
                    const std::vector<std::pair<std::string, sym::Expr>>& residuals, std::uint64_t seed) {
  return residual_check(std::move(id), std::move(anchor), residuals, seed, Status::mismatch_reported);
}

Check bool_check(std::string id, std::string anchor, bool ok, std::string residual) {
  return Check{std::move(id), std::move(anchor), ok ? Status::pass : Status::fail, std::move(residual), 0.0};
}

}  // namespace tnv::report
