#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tnv/sym/expr.hpp"

namespace tnv::report {

enum class Status { pass, fail, mismatch_reported };

std::string to_string(Status s);

struct Check {
  std::string id;
  std::string anchor;
  Status status = Status::fail;
  std::string residual;
  double ms = 0.0;
};

struct Report {
  std::string suite;
  std::string engine_version;
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool ok() const;
  std::string to_json() const;
  std::string to_csv() const;
};

/// pass when the residual is zero (canonical form plus the numeric guard).
Check zero_check(std::string id, std::string anchor, const sym::Expr& residual, std::uint64_t seed = 0);
/// Several residuals that must all vanish; the text lists the non-zero ones.
Check zero_check(std::string id, std::string anchor, const std::vector<std::pair<std::string, sym::Expr>>& residuals,
                 std::uint64_t seed = 0);
/// Like zero_check, but a non-zero residual is itemised rather than failed.
Check display_check(std::string id, std::string anchor, const sym::Expr& residual, std::uint64_t seed = 0);
Check display_check(std::string id, std::string anchor,
                    const std::vector<std::pair<std::string, sym::Expr>>& residuals, std::uint64_t seed = 0);
Check bool_check(std::string id, std::string anchor, bool ok, std::string residual);

const char* engine_version();

}  // namespace tnv::report
