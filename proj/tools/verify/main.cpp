#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tnv/cli/suites.hpp"
#include "tnv/errors.hpp"

namespace {

struct Options {
  std::string m, l, c0, c1, eps_case, out, format = "json", model_file, range;
  int n = 1;
  std::uint64_t seed = 0;
  bool timings = false;
};

tnv::cli::Params to_params(const Options& o) {
  tnv::cli::Params p;
  if (!o.model_file.empty()) p = tnv::cli::load_model_file(o.model_file, p);
  if (!o.m.empty()) p.m = tnv::cli::parse_rational(o.m);
  if (!o.l.empty()) p.l = tnv::cli::parse_rational(o.l);
  if (!o.c0.empty()) p.c0 = tnv::cli::parse_rational(o.c0);
  if (!o.c1.empty()) p.c1 = tnv::cli::parse_rational(o.c1);
  if (o.n != 1) p.n = o.n;
  if (o.eps_case == "spacelike") p.eps = 1;
  else if (o.eps_case == "timelike") p.eps = -1;
  else if (!o.eps_case.empty()) throw tnv::BadParams("--case must be spacelike or timelike");
  p.timings = o.timings;
  return p;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--m", o.m, "mass parameter, p/q");
  app->add_option("--l", o.l, "NUT parameter, p/q");
  app->add_option("--c0", o.c0, "integration constant c0 > 0, p/q");
  app->add_option("--c1", o.c1, "integration constant c1, p/q");
  app->add_option("--n", o.n, "lens index");
  app->add_option("--case", o.eps_case, "spacelike or timelike");
  app->add_option("--seed", o.seed, "seed for numeric guards and property sweeps");
  app->add_option("--out", o.out, "write to a file instead of stdout");
  app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--model", o.model_file, "model definition file (JSON)");
  app->add_flag("--timings", o.timings, "record wall time per check (reports are then not reproducible)");
}

void write(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw tnv::BadParams("cannot write " + o.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taub-NUT verification suites"};
  app.require_subcommand(0, 1);
  Options o;
  std::string suite;
  app.add_option("suite", suite, "algebra, forms, killing, curvature-spacelike, curvature-timelike, extensions, "
                                 "reduction, charges, kretschmann or all");
  add_common(&app, o);

  Options to;
  std::string quantity;
  auto* table = app.add_subcommand("table", "numeric table as CSV");
  table->add_option("quantity", quantity, "f, K or charge-convergence")->required();
  table->add_option("--range", to.range, "from:to:step");
  add_common(table, to);

  Options xo;
  auto* xref = app.add_subcommand("xref", "cross-reference of published formulas");
  add_common(xref, xo);

  CLI11_PARSE(app, argc, argv);

  try {
    if (table->parsed()) {
      auto p = to_params(to);
      std::optional<tnv::cli::Range> range;
      if (!to.range.empty()) range = tnv::cli::parse_range(to.range);
      write(to, tnv::cli::emit_table(quantity, p, range));
      return 0;
    }
    if (xref->parsed()) {
      auto rep = tnv::cli::cross_reference(xo.seed);
      write(xo, xo.format == "csv" ? rep.to_csv() : rep.to_json());
      return rep.ok() ? 0 : 1;
    }
    if (suite.empty()) {
      std::cerr << app.help();
      return 2;
    }
    auto rep = tnv::cli::run_suite(suite, to_params(o), o.seed);
    write(o, o.format == "csv" ? rep.to_csv() : rep.to_json());
    return rep.ok() ? 0 : 1;
  } catch (const tnv::UnknownSuite& e) {
    std::cerr << "UnknownSuite: " << e.what() << "\n";
    return 2;
  } catch (const tnv::BadParams& e) {
    std::cerr << "BadParams: " << e.what() << "\n";
    return 2;
  } catch (const tnv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
