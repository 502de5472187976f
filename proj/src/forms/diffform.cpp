#include "tnv/forms/diffform.hpp"

#include <algorithm>
#include <sstream>

#include "tnv/errors.hpp"

namespace tnv::forms {

std::vector<int> mask_indices(IndexMask m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1u) {
    if (m & 1u) out.push_back(i);
  }
  return out;
}

int popcount(IndexMask m) { return __builtin_popcount(m); }

// ---------------------------------------------------------------------------

DiffForm::DiffForm(ChartPtr chart, int degree, Basis basis)
    : chart_(std::move(chart)), degree_(degree), basis_(basis) {
  if (degree_ < 0 || degree_ > static_cast<int>(chart_->dim())) {
    throw DegreeError("form degree " + std::to_string(degree_) + " out of range");
  }
}

DiffForm DiffForm::scalar(ChartPtr chart, Expr value, Basis basis) {
  DiffForm f(std::move(chart), 0, basis);
  f.add(0, value);
  return f;
}

DiffForm DiffForm::unit(ChartPtr chart, int index, Basis basis) {
  DiffForm f(std::move(chart), 1, basis);
  f.add(1u << index, Expr(1));
  return f;
}

DiffForm DiffForm::differential(ChartPtr chart, Symbol coordinate) {
  int i = chart->index_of(coordinate);
  if (i < 0) throw Error("'" + coordinate.name() + "' is not a coordinate of the chart");
  return unit(std::move(chart), i);
}

DiffForm DiffForm::one_form(ChartPtr chart, const std::vector<Expr>& coeffs, Basis basis) {
  if (coeffs.size() != chart->dim()) throw Error("one_form: coefficient count differs from chart dimension");
  DiffForm f(std::move(chart), 1, basis);
  for (std::size_t i = 0; i < coeffs.size(); ++i) f.add(1u << i, coeffs[i]);
  return f;
}

Expr DiffForm::coeff(IndexMask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Expr() : it->second;
}

Expr DiffForm::component(std::initializer_list<int> idx) const {
  std::vector<int> v(idx);
  IndexMask m = 0;
  int inversions = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (m & (1u << v[i])) return Expr();
    m |= 1u << v[i];
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] > v[j]) ++inversions;
    }
  }
  if (static_cast<int>(v.size()) != degree_) throw DegreeError("component: wrong number of indices");
  Expr c = coeff(m);
  return inversions % 2 == 0 ? c : -c;
}

void DiffForm::add(IndexMask m, const Expr& c) {
  if (popcount(m) != degree_) throw DegreeError("term of the wrong degree");
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

DiffForm DiffForm::relabel(Basis b) const {
  DiffForm r = *this;
  r.basis_ = b;
  return r;
}

namespace {
void check_compatible(const DiffForm& a, const DiffForm& b) {
  if (!same_chart(a.chart(), b.chart())) throw BasisMismatch("forms live on different charts");
  if (a.basis() != b.basis()) throw BasisMismatch("forms use different bases");
}
}  // namespace

DiffForm DiffForm::operator-() const {
  DiffForm r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

DiffForm operator+(const DiffForm& a, const DiffForm& b) {
  check_compatible(a, b);
  if (a.degree() != b.degree()) throw DegreeError("sum of forms of different degree");
  DiffForm r = a;
  for (const auto& [m, c] : b.terms()) r.add(m, c);
  return r;
}

DiffForm operator-(const DiffForm& a, const DiffForm& b) { return a + (-b); }

DiffForm operator*(const Expr& c, const DiffForm& a) {
  DiffForm r(a.chart(), a.degree(), a.basis());
  if (c.is_zero()) return r;
  for (const auto& [m, x] : a.terms()) r.add(m, c * x);
  return r;
}

bool operator==(const DiffForm& a, const DiffForm& b) {
  return same_chart(a.chart_, b.chart_) && a.degree_ == b.degree_ && a.basis_ == b.basis_ && a.terms_ == b.terms_;
}

std::string DiffForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (int i : mask_indices(m)) {
      if (basis_ == Basis::frame) {
        os << (i == mask_indices(m).front() ? "*" : "^") << "th" << i;
      } else {
        os << (i == mask_indices(m).front() ? "*" : "^") << "d " << chart_->coord(static_cast<std::size_t>(i)).name();
      }
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

VecField::VecField(ChartPtr chart, std::vector<Expr> comps) : chart_(std::move(chart)), comps_(std::move(comps)) {
  if (comps_.size() != chart_->dim()) throw Error("vector field length differs from chart dimension");
}

VecField VecField::zero(ChartPtr chart) {
  std::size_t n = chart->dim();
  return VecField(std::move(chart), std::vector<Expr>(n));
}

VecField VecField::partial(ChartPtr chart, Symbol coordinate) {
  int i = chart->index_of(coordinate);
  if (i < 0) throw Error("'" + coordinate.name() + "' is not a coordinate of the chart");
  std::vector<Expr> c(chart->dim());
  c[static_cast<std::size_t>(i)] = Expr(1);
  return VecField(std::move(chart), std::move(c));
}

bool VecField::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Expr& e) { return e.is_zero(); });
}

Expr VecField::apply(const Expr& f) const {
  Expr acc;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (comps_[i].is_zero()) continue;
    acc += comps_[i] * sym::diff(f, chart_->coord(i));
  }
  return acc;
}

VecField VecField::operator-() const {
  VecField r = *this;
  for (auto& c : r.comps_) c = -c;
  return r;
}

VecField operator+(const VecField& a, const VecField& b) {
  if (!same_chart(a.chart_, b.chart_)) throw BasisMismatch("vector fields on different charts");
  VecField r = a;
  for (std::size_t i = 0; i < r.comps_.size(); ++i) r.comps_[i] += b.comps_[i];
  return r;
}

VecField operator-(const VecField& a, const VecField& b) { return a + (-b); }

VecField operator*(const Expr& c, const VecField& a) {
  VecField r = a;
  for (auto& x : r.comps_) x = c * x;
  return r;
}

bool operator==(const VecField& a, const VecField& b) {
  return same_chart(a.chart_, b.chart_) && a.comps_ == b.comps_;
}

std::string VecField::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (comps_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << comps_[i].str() << ")*D_" << chart_->coord(i).name();
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------------------

SymTensor2::SymTensor2(ChartPtr chart) : chart_(std::move(chart)), m_(chart_->dim() * chart_->dim()) {}

void SymTensor2::set(std::size_t i, std::size_t j, const Expr& v) {
  m_[i * dim() + j] = v;
  m_[j * dim() + i] = v;
}

void SymTensor2::add_sym(std::size_t i, std::size_t j, const Expr& v) {
  m_[i * dim() + j] += v;
  if (i != j) m_[j * dim() + i] += v;
}

bool SymTensor2::is_zero() const {
  return std::all_of(m_.begin(), m_.end(), [](const Expr& e) { return e.is_zero(); });
}

namespace {
std::vector<std::vector<Expr>> rows(const SymTensor2& g) {
  std::vector<std::vector<Expr>> m(g.dim(), std::vector<Expr>(g.dim()));
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) m[i][j] = g(i, j);
  }
  return m;
}
}  // namespace

Expr SymTensor2::det() const { return determinant(rows(*this)); }

std::vector<std::vector<Expr>> SymTensor2::inverse() const {
  try {
    return matrix_inverse(rows(*this));
  } catch (const DivisionByZero&) {
    throw SingularMetric("metric determinant canonicalises to zero");
  }
}

SymTensor2 operator+(const SymTensor2& a, const SymTensor2& b) {
  if (!same_chart(a.chart_, b.chart_)) throw BasisMismatch("tensors on different charts");
  SymTensor2 r = a;
  for (std::size_t i = 0; i < r.m_.size(); ++i) r.m_[i] += b.m_[i];
  return r;
}

SymTensor2 operator-(const SymTensor2& a, const SymTensor2& b) { return a + (Expr(-1) * b); }

SymTensor2 operator*(const Expr& c, const SymTensor2& a) {
  SymTensor2 r = a;
  for (auto& x : r.m_) x = c * x;
  return r;
}

bool operator==(const SymTensor2& a, const SymTensor2& b) { return same_chart(a.chart_, b.chart_) && a.m_ == b.m_; }

std::string SymTensor2::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = i; j < dim(); ++j) {
      const Expr& c = (*this)(i, j);
      if (c.is_zero()) continue;
      if (!first) os << ", ";
      first = false;
      os << "g[" << chart_->coord(i).name() << "," << chart_->coord(j).name() << "] = " << c.str();
    }
  }
  return first ? "0" : os.str();
}

SymTensor2 sym_product(const DiffForm& a, const DiffForm& b) {
  if (a.degree() != 1 || b.degree() != 1) throw DegreeError("sym_product needs one-forms");
  if (a.basis() != Basis::coordinate || b.basis() != Basis::coordinate) {
    throw BasisMismatch("sym_product needs coordinate-basis forms");
  }
  SymTensor2 g(a.chart());
  Expr half = Expr::rational(1, 2);
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto i = static_cast<std::size_t>(mask_indices(ma).front());
      auto j = static_cast<std::size_t>(mask_indices(mb).front());
      Expr v = ca * cb;
      if (i == j) {
        g.add_sym(i, i, v);
      } else {
        g.add_sym(i, j, half * v);
      }
    }
  }
  return g;
}

SymTensor2 square(const DiffForm& a) { return sym_product(a, a); }

// ---------------------------------------------------------------------------

namespace {

Expr det_rec(const std::vector<std::vector<Expr>>& m, std::vector<std::size_t>& cols, std::size_t row) {
  std::size_t n = m.size();
  if (row == n) return Expr(1);
  Expr acc;
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::size_t c = cols[k];
    if (!m[row][c].is_zero()) {
      std::vector<std::size_t> rest = cols;
      rest.erase(rest.begin() + static_cast<long>(k));
      Expr minor = det_rec(m, rest, row + 1);
      if (!minor.is_zero()) acc += (sign > 0 ? m[row][c] : -m[row][c]) * minor;
    }
    sign = -sign;
  }
  return acc;
}

}  // namespace

Expr determinant(const std::vector<std::vector<Expr>>& m) {
  std::vector<std::size_t> cols(m.size());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  return det_rec(m, cols, 0);
}

std::vector<std::vector<Expr>> matrix_inverse(const std::vector<std::vector<Expr>>& m, Expr* det_out) {
  std::size_t n = m.size();
  Expr d = determinant(m);
  if (det_out != nullptr) *det_out = d;
  if (d.is_zero()) throw DivisionByZero("singular matrix");
  Expr inv_d = d.inverse();
  std::vector<std::vector<Expr>> out(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // cofactor C_ji goes to position (i, j)
      std::vector<std::vector<Expr>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Expr> row;
        for (std::size_t c = 0; c < n; ++c) {
          if (c != i) row.push_back(m[r][c]);
        }
        minor.push_back(std::move(row));
      }
      Expr cof = determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      out[i][j] = cof * inv_d;
    }
  }
  return out;
}

}  // namespace tnv::forms
