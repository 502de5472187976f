#include "tnv/forms/coframe.hpp"

#include "tnv/errors.hpp"

namespace tnv::forms {

Coframe::Coframe(std::vector<DiffForm> thetas) : thetas_(std::move(thetas)) {
  if (thetas_.empty()) throw Error("empty coframe");
  chart_ = thetas_.front().chart();
  std::size_t n = chart_->dim();
  if (thetas_.size() != n) throw Error("coframe size differs from chart dimension");
  e_.assign(n, std::vector<Expr>(n));
  for (std::size_t a = 0; a < n; ++a) {
    const DiffForm& t = thetas_[a];
    if (t.degree() != 1 || t.basis() != Basis::coordinate) throw DegreeError("coframe entries must be coordinate one-forms");
    if (!same_chart(t.chart(), chart_)) throw BasisMismatch("coframe entries on different charts");
    for (std::size_t i = 0; i < n; ++i) e_[a][i] = t.coeff(1u << i);
  }
  try {
    inv_ = matrix_inverse(e_, &det_);
  } catch (const DivisionByZero&) {
    throw SingularCoframe("coframe determinant canonicalises to zero");
  }
}

namespace {

// det of m restricted to rows `rows` and columns `cols`
Expr minor_det(const std::vector<std::vector<Expr>>& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::vector<std::vector<Expr>> sub(rows.size(), std::vector<Expr>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      sub[i][j] = m[static_cast<std::size_t>(rows[i])][static_cast<std::size_t>(cols[j])];
    }
  }
  return determinant(sub);
}

std::vector<IndexMask> masks_of_degree(std::size_t n, int k) {
  std::vector<IndexMask> out;
  for (IndexMask m = 0; m < (1u << n); ++m) {
    if (popcount(m) == k) out.push_back(m);
  }
  return out;
}

}  // namespace

// a = sum_I c_I u^I with u^i = sum_j m[i][j] w^j, so u^I = sum_J det(m[I][J]) w^J
DiffForm Coframe::convert(const DiffForm& a, const std::vector<std::vector<Expr>>& m, Basis target) const {
  if (!same_chart(a.chart(), chart_)) throw BasisMismatch("form and coframe on different charts");
  DiffForm r(chart_, a.degree(), target);
  if (a.degree() == 0) {
    r.add(0, a.coeff(0));
    return r;
  }
  auto targets = masks_of_degree(dim(), a.degree());
  for (const auto& [mi, c] : a.terms()) {
    auto rows = mask_indices(mi);
    for (IndexMask mj : targets) {
      Expr d = minor_det(m, rows, mask_indices(mj));
      if (!d.is_zero()) r.add(mj, c * d);
    }
  }
  return r;
}

DiffForm Coframe::to_coordinate(const DiffForm& a) const {
  if (a.basis() != Basis::frame) throw BasisMismatch("to_coordinate needs a frame-basis form");
  return convert(a, e_, Basis::coordinate);
}

DiffForm Coframe::to_frame(const DiffForm& a) const {
  if (a.basis() != Basis::coordinate) throw BasisMismatch("to_frame needs a coordinate-basis form");
  return convert(a, inv_, Basis::frame);
}

VecField Coframe::frame_vector(std::size_t a) const {
  std::vector<Expr> c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = inv_[i][a];
  return VecField(chart_, std::move(c));
}

SymTensor2 Coframe::metric(const std::vector<int>& eta) const {
  if (eta.size() != dim()) throw Error("signature length differs from coframe size");
  SymTensor2 g(chart_);
  for (std::size_t a = 0; a < dim(); ++a) {
    SymTensor2 sq = square(thetas_[a]);
    g = g + (eta[a] > 0 ? sq : Expr(-1) * sq);
  }
  return g;
}

DiffForm Coframe::d_frame(std::size_t a) const { return to_frame(ext_d(thetas_[a])); }

report::Check dual_structure_check(const std::vector<DiffForm>& omegas, const StructureConstants& c, std::string id,
                                   std::uint64_t seed) {
  std::vector<std::pair<std::string, Expr>> residuals;
  std::size_t n = omegas.size();
  for (std::size_t k = 0; k < n; ++k) {
    DiffForm lhs = ext_d(omegas[k]);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (c[k][i][j].is_zero()) continue;
        lhs = lhs + c[k][i][j] * wedge(omegas[i], omegas[j]);
      }
    }
    for (const auto& [m, v] : lhs.terms()) {
      std::string label = "k=" + std::to_string(k + 1) + " mask=" + std::to_string(m);
      residuals.emplace_back(label, v);
    }
  }
  auto check = report::zero_check(std::move(id), "dual one-form structure identity", residuals, seed);
  return check;
}

}  // namespace tnv::forms
