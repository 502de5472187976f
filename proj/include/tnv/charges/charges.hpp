#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "tnv/catalog/catalog.hpp"
#include "tnv/report/check.hpp"
#include "tnv/sym/numeric.hpp"

namespace tnv::charges {

using forms::DiffForm;
using forms::SymTensor2;
using forms::VecField;
using sym::Expr;
using sym::Symbol;

struct ConvergenceRow {
  mpq_class r;
  double value;
  double error;  // |value - limit|
};

struct ChargeResult {
  DiffForm form;       // the closed two-form before restriction
  DiffForm restricted; // dr terms dropped
  Expr coefficient;    // coefficient of sin(theta) d theta ^ d phi in `restricted`
  Expr value;          // -(1/8 pi) * coefficient * 4 pi
  Expr limit;
};

/// k = -(1/2l) d_psi
VecField komar_field(const catalog::SpacetimeModel& model);

/// g(k, .)
DiffForm flat(const VecField& k, const SymTensor2& g);

/// Drops every term containing d r.
DiffForm restrict_to_radius(const DiffForm& a);

/// NotKilling when k is not Killing, NotTimelikeRegion when k is not
/// timelike as r -> infinity, BadParams when the model has no tetrad.
ChargeResult komar_mass(const catalog::SpacetimeModel& model, const VecField& k);
ChargeResult dual_charge(const catalog::SpacetimeModel& model, const VecField& k);

/// Limit r -> +infinity of an expression rational in r and in at most one
/// radical sqrt(r^2 + b r + c) (positive branch). Leading coefficients that
/// involve parameters are taken as non-zero. Divergent when the numerator
/// degree wins.
Expr limit_at_infinity(const Expr& e, Symbol r);

/// Values at the given radii with the remaining symbols bound by `point`.
std::vector<ConvergenceRow> convergence_table(const Expr& value, const Expr& limit, const sym::RationalPoint& point,
                                              const std::vector<mpq_class>& radii);
/// r = 10^3 .. 10^6
std::vector<mpq_class> default_radii();

/// Slope of log(error) against log(r), fitted by least squares.
double convergence_order(const std::vector<ConvergenceRow>& rows);

report::Report charges_report(std::uint64_t seed = 0);

}  // namespace tnv::charges
