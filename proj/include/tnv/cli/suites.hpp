#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tnv/catalog/catalog.hpp"
#include "tnv/report/check.hpp"

namespace tnv::cli {

/// Command-line parameters; unset values fall back to per-suite defaults.
struct Params {
  std::optional<mpq_class> m, l, c0, c1;
  int n = 1;
  std::optional<int> eps;  // --case
  std::string model = "taub-nut";  // taub-nut, extension
  catalog::Branch branch = catalog::Branch::psi_prime;
  bool timings = false;
};

/// "p/q", an integer or a terminating decimal; BadParams otherwise.
mpq_class parse_rational(const std::string& text);

/// Model definition file {name, params:{m, l, n, eps}, branch}; fields
/// present in the file override those in `base`.
Params load_model_file(const std::string& path, Params base);

const std::vector<std::string>& suite_names();

/// Runs a suite; UnknownSuite for an unknown name, BadParams for values
/// outside the domain of the suite. Checks run concurrently and the report
/// is ordered by check id.
report::Report run_suite(const std::string& name, const Params& params, std::uint64_t seed);

/// Seeded property sweeps, `count` instances each.
std::vector<report::Check> property_checks(std::uint64_t seed, int count);

struct Range {
  mpq_class from, to, step;
};

/// "a:b:h"; BadParams unless h > 0 and a <= b.
Range parse_range(const std::string& text);
std::optional<Range> default_range(const std::string& quantity);

/// CSV table of f, K or charge-convergence. DomainError from the numeric
/// evaluation is rethrown with the row.
std::string emit_table(const std::string& quantity, const Params& params, const std::optional<Range>& range);

/// Cross-reference ledger: each published formula or remark that the engine
/// checks, with the verdict recomputed.
report::Report cross_reference(std::uint64_t seed);

}  // namespace tnv::cli
