#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tnv/curv/curvature.hpp"
#include "tnv/report/check.hpp"

namespace tnv::catalog {

using forms::ChartPtr;
using forms::DiffForm;
using forms::SymTensor2;
using forms::VecField;
using sym::Expr;
using sym::Symbol;

/// sigma_x, sigma_y, sigma_z on a chart containing psi, theta, phi.
struct InvariantFrame {
  DiffForm sigma_x;
  DiffForm sigma_y;
  DiffForm sigma_z;
  /// e1' = d_psi, e2', e3' dual to (sigma_z, sigma_x, sigma_y)
  std::array<VecField, 3> duals;
  /// c^k_ij in the basis order (sigma_z, sigma_x, sigma_y)
  forms::StructureConstants constants;
};

InvariantFrame invariant_frame(const ChartPtr& chart);

/// xi_0 .. xi_3 on a chart containing psi, theta, phi.
std::array<VecField, 4> killing_fields(const ChartPtr& chart);

enum class Branch { psi_prime, psi_double_prime };

struct SpacetimeModel {
  std::string name;
  ChartPtr chart;
  SymTensor2 metric;
  std::optional<curv::Tetrad> tetrad;
  std::map<std::string, Expr> params;
  std::vector<VecField> killing;
  std::string psi_period;
  int lens_index = 1;
};

/// f(r) = (r^2 - 2mr - l^2)/(r^2 + l^2)
Expr taub_nut_f(const Expr& m, const Expr& l, const Expr& r);
/// r+- = m +- sqrt(m^2 + l^2)
std::pair<Expr, Expr> horizons(const Expr& m, const Expr& l);

/// ParameterDomain when l is zero or n < 1.
SpacetimeModel taub_nut(const Expr& m, const Expr& l, int n = 1);
/// eps = +1 spacelike orbits, -1 timelike; tetrads as in the two cases.
SpacetimeModel generalized_family(int eps, const Expr& a, const Expr& b, const Expr& r_fn);
/// Horizon-regular forms on the chart (r, psi', theta, phi) or (r, psi'', theta, phi).
SpacetimeModel extension(Branch branch, const Expr& m, const Expr& l, int n = 1);

ChartPtr extension_chart(Branch branch);

/// eps A^2 sigma_z^2 + B^2 (sigma_x^2 + sigma_y^2) on the orbit chart.
SymTensor2 canonical_orbit_metric(int eps, const Expr& a, const Expr& b);

/// Four Killing residuals and the two commutator families.
report::Report verify_killing(const SpacetimeModel& model, std::uint64_t seed = 0);

/// Pulls the extension metric back along psi' = psi +- int dr/(2 l f),
/// giving a metric on the Euler chart; only d psi' = d psi +- dr/(2 l f) is used.
SymTensor2 pull_back_extension(const SpacetimeModel& ext, Branch branch, const Expr& m, const Expr& l);

/// "Taub", "NUT" or "horizon" from the sign of f at a rational r.
std::string orbit_type(const Expr& m, const Expr& l, const mpq_class& r);

/// Metric components that differ, as labelled residuals.
std::vector<std::pair<std::string, Expr>> metric_difference(const SymTensor2& a, const SymTensor2& b);

}  // namespace tnv::catalog
