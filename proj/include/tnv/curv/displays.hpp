#pragma once

#include <string>
#include <vector>

#include "tnv/curv/curvature.hpp"
#include "tnv/report/check.hpp"

namespace tnv::curv {

/// One coefficient of a displayed frame form: indices of the basis form
/// (one index for one-forms, two for two-forms) and the coefficient text in
/// the parser syntax, with A, B, R formal functions of r.
struct DisplayTerm {
  std::vector<int> idx;
  std::string coeff;
};

struct FormDisplay {
  int a;
  int b;  // -1 for d theta^a
  std::vector<DisplayTerm> terms;
};

/// Listed Riemann component R^a_bcd with its text.
struct RiemannDisplay {
  std::array<int, 4> idx;
  std::string value;
};

/// The published formulas for one orbit case.
struct CaseDisplays {
  int eps;
  std::vector<FormDisplay> dtheta;
  std::vector<FormDisplay> connection;  // a < b; the partner omega^b_a follows by symmetry
  std::vector<FormDisplay> curvature;   // a < b
  std::vector<RiemannDisplay> riemann;  // everything not implied by symmetry vanishes
};

const CaseDisplays& case_displays(int eps);

/// Formal tetrad of the generalized family for the given case.
Tetrad formal_tetrad(int eps);

/// Builds a frame-basis form from its display.
DiffForm display_form(const forms::ChartPtr& chart, const FormDisplay& d, int degree);

/// Full lowered Riemann tensor R_abcd generated from the listed components
/// by the pair symmetries. Conflicting images are returned in `conflicts`.
Array4<Expr> expand_riemann(const std::vector<RiemannDisplay>& list, const Signature& eta,
                            std::vector<std::string>* conflicts);

/// Engine versus displays: d theta, connection, curvature forms, Riemann,
/// the Ricci/Einstein relations, plus the defining connection residuals.
std::vector<report::Check> display_checks(int eps, std::uint64_t seed = 0);

}  // namespace tnv::curv
