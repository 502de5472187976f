#include "tnv/forms/calculus.hpp"

#include "tnv/errors.hpp"

namespace tnv::forms {

int merge_sign(IndexMask a, IndexMask b) {
  if (a & b) return 0;
  // each index of b must pass every larger index of a
  int swaps = 0;
  for (int j : mask_indices(b)) swaps += popcount(a & ~((1u << (j + 1)) - 1u));
  return swaps % 2 == 0 ? 1 : -1;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  if (!same_chart(a.chart(), b.chart())) throw BasisMismatch("wedge of forms on different charts");
  if (a.basis() != b.basis()) throw BasisMismatch("wedge of forms in different bases");
  int deg = a.degree() + b.degree();
  if (deg > static_cast<int>(a.chart()->dim())) return DiffForm(a.chart(), static_cast<int>(a.chart()->dim()), a.basis());
  DiffForm r(a.chart(), deg, a.basis());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int s = merge_sign(ma, mb);
      if (s == 0) continue;
      Expr c = ca * cb;
      r.add(ma | mb, s > 0 ? c : -c);
    }
  }
  return r;
}

DiffForm ext_d(const DiffForm& a) {
  if (a.basis() != Basis::coordinate) throw BasisMismatch("ext_d needs a coordinate-basis form");
  const auto& chart = a.chart();
  int n = static_cast<int>(chart->dim());
  if (a.degree() == n) return DiffForm(chart, n);
  DiffForm r(chart, a.degree() + 1);
  for (const auto& [m, c] : a.terms()) {
    for (int j = 0; j < n; ++j) {
      if (m & (1u << j)) continue;
      Expr dc = sym::diff(c, chart->coord(static_cast<std::size_t>(j)));
      if (dc.is_zero()) continue;
      int below = popcount(m & ((1u << j) - 1u));
      r.add(m | (1u << j), below % 2 == 0 ? dc : -dc);
    }
  }
  return r;
}

DiffForm interior(const VecField& x, const DiffForm& a) {
  if (a.degree() == 0) throw DegreeError("interior product of a 0-form");
  if (a.basis() != Basis::coordinate) throw BasisMismatch("interior needs a coordinate-basis form");
  if (!same_chart(x.chart(), a.chart())) throw BasisMismatch("vector field and form on different charts");
  DiffForm r(a.chart(), a.degree() - 1);
  for (const auto& [m, c] : a.terms()) {
    int p = 0;
    for (int i : mask_indices(m)) {
      const Expr& xi = x[static_cast<std::size_t>(i)];
      if (!xi.is_zero()) {
        Expr v = xi * c;
        r.add(m & ~(1u << i), p % 2 == 0 ? v : -v);
      }
      ++p;
    }
  }
  return r;
}

DiffForm lie_form(const VecField& x, const DiffForm& a) {
  if (a.degree() == 0) return DiffForm::scalar(a.chart(), x.apply(a.coeff(0)));
  DiffForm r = interior(x, ext_d(a));
  return r + ext_d(interior(x, a));
}

VecField lie_vec(const VecField& x, const VecField& y) {
  if (!same_chart(x.chart(), y.chart())) throw BasisMismatch("vector fields on different charts");
  std::vector<Expr> c(x.chart()->dim());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = x.apply(y[k]) - y.apply(x[k]);
  return VecField(x.chart(), std::move(c));
}

SymTensor2 lie_metric(const VecField& x, const SymTensor2& g) {
  if (!same_chart(x.chart(), g.chart())) throw BasisMismatch("vector field and metric on different charts");
  const auto& chart = g.chart();
  std::size_t n = chart->dim();
  // dx[k][i] = d_i X^k
  std::vector<std::vector<Expr>> dx(n, std::vector<Expr>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) dx[k][i] = sym::diff(x[k], chart->coord(i));
  }
  SymTensor2 r(chart);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Expr v = x.apply(g(i, j));
      for (std::size_t k = 0; k < n; ++k) {
        if (!dx[k][i].is_zero()) v += g(k, j) * dx[k][i];
        if (!dx[k][j].is_zero()) v += g(i, k) * dx[k][j];
      }
      r.set(i, j, v);
    }
  }
  return r;
}

DiffForm hodge_frame(const DiffForm& a, const Signature& eta, int orientation) {
  if (a.basis() != Basis::frame) throw BasisMismatch("hodge_frame needs a frame-basis form");
  if (a.chart()->dim() != 4) throw DegreeError("hodge_frame is defined on four-dimensional charts");
  for (int e : eta) {
    if (e != 1 && e != -1) throw Error("signature entries must be +1 or -1");
  }
  constexpr IndexMask kAll = 0xFu;
  DiffForm r(a.chart(), 4 - a.degree(), Basis::frame);
  for (const auto& [m, c] : a.terms()) {
    IndexMask comp = kAll & ~m;
    int s = orientation * merge_sign(m, comp);
    for (int i : mask_indices(m)) s *= eta[static_cast<std::size_t>(i)];
    r.add(comp, s > 0 ? c : -c);
  }
  return r;
}

}  // namespace tnv::forms
