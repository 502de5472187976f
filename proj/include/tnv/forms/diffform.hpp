#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "tnv/forms/chart.hpp"

namespace tnv::forms {

enum class Basis { coordinate, frame };

/// Sorted index set of a basis k-form, bit i standing for index i.
using IndexMask = unsigned;

std::vector<int> mask_indices(IndexMask m);
int popcount(IndexMask m);

/// k-form stored sparsely as mask -> coefficient; absent masks are zero.
class DiffForm {
 public:
  DiffForm(ChartPtr chart, int degree, Basis basis = Basis::coordinate);
  static DiffForm scalar(ChartPtr chart, Expr value, Basis basis = Basis::coordinate);
  /// dx^i in the coordinate basis or theta^i in the frame basis.
  static DiffForm unit(ChartPtr chart, int index, Basis basis = Basis::coordinate);
  static DiffForm differential(ChartPtr chart, Symbol coordinate);
  /// Sum of coefficient times the 1-forms indexed by position.
  static DiffForm one_form(ChartPtr chart, const std::vector<Expr>& coeffs, Basis basis = Basis::coordinate);

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  Basis basis() const { return basis_; }
  const std::map<IndexMask, Expr>& terms() const { return terms_; }
  Expr coeff(IndexMask m) const;
  /// Coefficient on the basis form with the listed (not necessarily sorted)
  /// indices, with the permutation sign applied.
  Expr component(std::initializer_list<int> idx) const;
  /// Adds c to the coefficient of mask m.
  void add(IndexMask m, const Expr& c);
  bool is_zero() const { return terms_.empty(); }
  DiffForm relabel(Basis b) const;

  DiffForm operator-() const;
  friend DiffForm operator+(const DiffForm& a, const DiffForm& b);
  friend DiffForm operator-(const DiffForm& a, const DiffForm& b);
  friend DiffForm operator*(const Expr& c, const DiffForm& a);
  friend DiffForm operator*(const DiffForm& a, const Expr& c) { return c * a; }
  friend bool operator==(const DiffForm& a, const DiffForm& b);

  std::string str() const;

 private:
  ChartPtr chart_;
  int degree_;
  Basis basis_;
  std::map<IndexMask, Expr> terms_;
};

/// Vector field with one coefficient per chart coordinate.
class VecField {
 public:
  VecField(ChartPtr chart, std::vector<Expr> comps);
  static VecField zero(ChartPtr chart);
  static VecField partial(ChartPtr chart, Symbol coordinate);

  const ChartPtr& chart() const { return chart_; }
  const Expr& operator[](std::size_t i) const { return comps_[i]; }
  const std::vector<Expr>& comps() const { return comps_; }
  bool is_zero() const;
  /// X(f)
  Expr apply(const Expr& f) const;

  VecField operator-() const;
  friend VecField operator+(const VecField& a, const VecField& b);
  friend VecField operator-(const VecField& a, const VecField& b);
  friend VecField operator*(const Expr& c, const VecField& a);
  friend bool operator==(const VecField& a, const VecField& b);
  std::string str() const;

 private:
  ChartPtr chart_;
  std::vector<Expr> comps_;
};

/// Symmetric rank-2 tensor in the coordinate basis.
class SymTensor2 {
 public:
  explicit SymTensor2(ChartPtr chart);
  const ChartPtr& chart() const { return chart_; }
  std::size_t dim() const { return chart_->dim(); }
  const Expr& operator()(std::size_t i, std::size_t j) const { return m_[i * dim() + j]; }
  void set(std::size_t i, std::size_t j, const Expr& v);
  /// Adds v to both (i, j) and (j, i); on the diagonal v is added once.
  void add_sym(std::size_t i, std::size_t j, const Expr& v);
  bool is_zero() const;
  Expr det() const;
  /// Inverse matrix; SingularMetric when the determinant is zero.
  std::vector<std::vector<Expr>> inverse() const;

  friend SymTensor2 operator+(const SymTensor2& a, const SymTensor2& b);
  friend SymTensor2 operator-(const SymTensor2& a, const SymTensor2& b);
  friend SymTensor2 operator*(const Expr& c, const SymTensor2& a);
  friend bool operator==(const SymTensor2& a, const SymTensor2& b);
  std::string str() const;

 private:
  ChartPtr chart_;
  std::vector<Expr> m_;
};

/// Symmetrised tensor product a (x) b + b (x) a over two, as a metric term;
/// square(a) = a (x) a.
SymTensor2 sym_product(const DiffForm& a, const DiffForm& b);
SymTensor2 square(const DiffForm& a);

/// Determinant of a square matrix of Exprs by cofactor expansion.
Expr determinant(const std::vector<std::vector<Expr>>& m);
/// Adjugate over determinant; DivisionByZero when the determinant vanishes.
std::vector<std::vector<Expr>> matrix_inverse(const std::vector<std::vector<Expr>>& m, Expr* det_out = nullptr);

}  // namespace tnv::forms
