#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tnv/curv/curvature.hpp"
#include "tnv/forms/diffform.hpp"

// Seeded generators for the property sweeps.
namespace tnv::gen {

using Rng = std::mt19937_64;
using forms::ChartPtr;
using forms::DiffForm;
using forms::VecField;
using sym::Expr;

int uniform(Rng& rng, int lo, int hi);
mpq_class rational(Rng& rng, int lo, int hi, int max_den = 9);

/// Atoms used by random_expr: r, m, l, A(r), sin/cos of theta and psi, and
/// the radical sqrt(r^2 + 1).
const std::vector<Expr>& atoms();

/// Small polynomial in the atoms with integer coefficients.
Expr random_poly(Rng& rng, int terms = 3, int max_degree = 2);
/// random_poly, optionally divided by a polynomial that never vanishes for
/// real arguments (1 + r^2 + atom^2).
Expr random_expr(Rng& rng);
/// Non-zero monomial c * atom^k ...
Expr random_monomial(Rng& rng);

/// Expression text in the parser syntax over r, m, l, sin(theta), cos(psi),
/// sqrt(r^2 + 1) and small integers; denominators are 1 + r^2 + x^2.
std::string random_text(Rng& rng, int depth = 3);

/// Coordinate-basis form of the given degree on the chart.
DiffForm random_form(Rng& rng, const ChartPtr& chart, int degree);
/// Frame-basis form with constant rational coefficients.
DiffForm random_frame_form(Rng& rng, const ChartPtr& chart, int degree);
VecField random_field(Rng& rng, const ChartPtr& chart);

/// Lower-triangular coframe on the Euler chart with a non-vanishing diagonal,
/// signature (-,+,+,+).
curv::Tetrad random_tetrad(Rng& rng);

}  // namespace tnv::gen
