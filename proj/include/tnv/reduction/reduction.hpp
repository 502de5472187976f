#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tnv/catalog/catalog.hpp"
#include "tnv/curv/curvature.hpp"
#include "tnv/report/check.hpp"

namespace tnv::reduction {

using sym::Expr;
using sym::Symbol;

/// eps = +1 spacelike orbits, -1 timelike.
struct ReductionCase {
  int eps = 1;
  bool gauge = true;  // R(r) = r applied
};

/// UnknownCase unless eps is +1 or -1.
ReductionCase make_case(int eps);

/// Shared symbols: r, the constants c0, c1, the constant radius R0, the
/// formal A, B, R, and the radicals t = sqrt(c0), s = sqrt(r^2 - c0).
struct Vars {
  Symbol r, c0, c1, R0;
  Symbol A, B, R;
  Symbol D, F;  // formal unknowns of the two ODEs
  Expr t, s;
};
const Vars& vars();

/// An ODE read off an Einstein combination: ode = curvature * factor.
struct Derivation {
  Expr curvature;
  Expr factor;
  Expr ode;
};

/// r^3 D' + D^3/4 for an expression D(r).
Expr d_ode(const Expr& d);
/// F' + (r^2 - 2c0)/(r(r^2 - c0)) F + eps 4 r c0/(r^2 - c0).
Expr f_ode(int eps, const Expr& f);

/// G00 + G11 with R = r, against r^3 (AB)' + (AB)^3/4. GaugeNotApplied
/// without the gauge.
Derivation derive_D_ode(const ReductionCase& c);
/// G00 (spacelike) or G11 (timelike) with R = r and A = D/B, times 4 c0 r^4,
/// against r (r^2 - c0) f_ode(B^2).
Derivation derive_F_ode(const ReductionCase& c);

struct ClosedFormSolution {
  int eps = 1;
  Expr D2, D;        // D = AB
  Expr F;            // F = B^2
  Expr Fh;           // homogeneous solution with c' -> c1
  Expr integral;     // 4 c0 s - 4 c0^2/s
  Expr b;            // sqrt(r^2 F), so B = b/r
  Expr A2;           // D^2/F
  Expr B2_prime;     // F in the r' chart (symbol r stands for r')
  Expr m, l2;        // parameter map
};
ClosedFormSolution closed_form(const ReductionCase& c);

/// Bindings A, B, R -> solved functions of r.
sym::Bindings on_shell(const ClosedFormSolution& sol);

/// Taub-NUT metric in the r' chart obtained from the solution, written in
/// terms of the symbolic parameters m and l.
catalog::SpacetimeModel transform_to_nut_form(const ClosedFormSolution& sol);

/// c0 and c1 recovered from a metric of Taub-NUT type by reading the
/// d psi^2 coefficient in the r' chart.
std::pair<Expr, Expr> recover_constants(const forms::SymTensor2& g, int eps);

/// 12 ((R^0_101)^2 - (R^0_123)^2) on shell, in r, c0, c1 and s.
Expr kretschmann_closed_form(const ClosedFormSolution& sol);
/// The long display in r, c0, c1.
Expr kretschmann_display();

report::Report verify_D_solution(std::uint64_t seed = 0);
report::Report verify_F_solution(const ReductionCase& c, std::uint64_t seed = 0);
report::Report constant_R_contradiction(const ReductionCase& c, std::uint64_t seed = 0);
report::Report verify_transform(const ReductionCase& c, std::uint64_t seed = 0);
report::Report verify_on_shell(const ReductionCase& c, std::uint64_t seed = 0);
report::Report kretschmann_report(std::uint64_t seed = 0);

// numeric oracle

using Rhs = std::function<long double(long double, long double)>;

struct OdeSample {
  double r;
  double numeric;
  double closed;
};

/// Classical fourth-order stepping with step doubling; the local error
/// estimate per step is kept below tol.
long double integrate(const Rhs& f, long double r0, long double y0, long double r1, long double tol = 1e-12L);

/// Integrates the F equation from the closed form at r0 and samples up to
/// r1; the closed form is evaluated with intervals.
std::vector<OdeSample> f_oracle(int eps, const mpq_class& c0, const mpq_class& c1, const mpq_class& r0,
                                const mpq_class& r1, int samples);
/// Same for D' = -D^3/(4 r^3).
std::vector<OdeSample> d_oracle(const mpq_class& c0, const mpq_class& r0, const mpq_class& r1, int samples);

/// Maximum |numeric - closed| for 10 seeded rational (c0, c1) pairs over
/// r in (sqrt(c0) + 0.1, 20]; one check per case.
report::Check oracle_sweep(int eps, std::uint64_t seed, int pairs = 10);

}  // namespace tnv::reduction
