#pragma once

#include <vector>

#include "tnv/forms/diffform.hpp"
#include "tnv/sym/numeric.hpp"

namespace tnv::curv {

using IntervalMatrix = std::vector<std::vector<sym::Interval>>;

/// Einstein tensor G_mn at a point, in coordinates. Only the metric and its
/// first and second derivatives are symbolic; inversion, Christoffels,
/// Riemann and the contractions run in interval arithmetic.
IntervalMatrix numeric_einstein(const forms::SymTensor2& g, const sym::NumericPoint& point, mpfr_prec_t bits);

/// Largest |endpoint| over all entries.
double max_magnitude(const IntervalMatrix& m);

}  // namespace tnv::curv
