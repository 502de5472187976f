#include "tnv/curv/numeric_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "tnv/errors.hpp"

namespace tnv::curv {

using sym::Interval;

namespace {

using Vec3 = std::vector<std::vector<std::vector<Interval>>>;
using Vec4 = std::vector<Vec3>;

Interval det(const IntervalMatrix& m, mpfr_prec_t bits) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Interval sum(mpq_class(0), bits);
  for (std::size_t j = 0; j < n; ++j) {
    IntervalMatrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Interval> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) row.push_back(m[i][k]);
      }
      minor.push_back(row);
    }
    Interval term = m[0][j] * det(minor, bits);
    sum = (j % 2 == 0) ? sum + term : sum - term;
  }
  return sum;
}

IntervalMatrix inverse(const IntervalMatrix& m, mpfr_prec_t bits) {
  std::size_t n = m.size();
  Interval d = det(m, bits);
  if (d.contains_zero()) throw SingularMetric("metric determinant encloses zero at the sample point");
  IntervalMatrix inv(n, std::vector<Interval>(n, Interval(bits)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      IntervalMatrix minor;
      for (std::size_t a = 0; a < n; ++a) {
        if (a == j) continue;
        std::vector<Interval> row;
        for (std::size_t b = 0; b < n; ++b) {
          if (b != i) row.push_back(m[a][b]);
        }
        minor.push_back(row);
      }
      Interval c = det(minor, bits);
      inv[i][j] = ((i + j) % 2 == 0 ? c : -c) / d;
    }
  }
  return inv;
}

}  // namespace

IntervalMatrix numeric_einstein(const forms::SymTensor2& g, const sym::NumericPoint& point, mpfr_prec_t bits) {
  const std::size_t n = g.dim();
  const auto& x = g.chart()->coords();
  Interval zero(mpq_class(0), bits);
  auto at = [&](const sym::Expr& e) { return sym::eval_numeric(e, point, bits); };

  IntervalMatrix gm(n, std::vector<Interval>(n, zero));
  Vec3 dg(n, IntervalMatrix(n, std::vector<Interval>(n, zero)));          // dg[k][i][j] = d_k g_ij
  Vec4 ddg(n, Vec3(n, IntervalMatrix(n, std::vector<Interval>(n, zero))));  // ddg[k][l][i][j]
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      gm[i][j] = at(g(i, j));
      for (std::size_t k = 0; k < n; ++k) {
        sym::Expr d1 = sym::diff(g(i, j), x[k]);
        dg[k][i][j] = at(d1);
        for (std::size_t l = 0; l < n; ++l) ddg[k][l][i][j] = at(sym::diff(d1, x[l]));
      }
    }
  }
  IntervalMatrix gi = inverse(gm, bits);

  // d_s g^{rl} = -g^{ra} d_s g_ab g^{bl}
  Vec3 dgi(n, IntervalMatrix(n, std::vector<Interval>(n, zero)));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t l = 0; l < n; ++l) {
        Interval acc = zero;
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) acc = acc + gi[r][a] * dg[s][a][b] * gi[b][l];
        }
        dgi[s][r][l] = -acc;
      }
    }
  }

  // T_lmn = d_m g_ln + d_n g_lm - d_l g_mn and its derivative
  Vec3 gam(n, IntervalMatrix(n, std::vector<Interval>(n, zero)));  // Gamma^r_mn
  Vec4 dgam(n, Vec3(n, IntervalMatrix(n, std::vector<Interval>(n, zero))));  // d_s Gamma^r_mn
  Interval half(mpq_class(1, 2), bits);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t q = 0; q < n; ++q) {
        Interval acc = zero;
        for (std::size_t l = 0; l < n; ++l) acc = acc + gi[r][l] * (dg[m][l][q] + dg[q][l][m] - dg[l][m][q]);
        gam[r][m][q] = half * acc;
        for (std::size_t s = 0; s < n; ++s) {
          Interval d = zero;
          for (std::size_t l = 0; l < n; ++l) {
            d = d + dgi[s][r][l] * (dg[m][l][q] + dg[q][l][m] - dg[l][m][q]) +
                gi[r][l] * (ddg[s][m][l][q] + ddg[s][q][l][m] - ddg[s][l][m][q]);
          }
          dgam[s][r][m][q] = half * d;
        }
      }
    }
  }

  // Ric_sn = R^r_srn, R^r_smn = d_m G^r_ns - d_n G^r_ms + G^r_ml G^l_ns - G^r_nl G^l_ms
  IntervalMatrix ric(n, std::vector<Interval>(n, zero));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t q = 0; q < n; ++q) {
      Interval acc = zero;
      for (std::size_t r = 0; r < n; ++r) {
        acc = acc + dgam[r][r][q][s] - dgam[q][r][r][s];
        for (std::size_t l = 0; l < n; ++l) acc = acc + gam[r][r][l] * gam[l][q][s] - gam[r][q][l] * gam[l][r][s];
      }
      ric[s][q] = acc;
    }
  }
  Interval scalar = zero;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) scalar = scalar + gi[a][b] * ric[a][b];
  }
  IntervalMatrix ein(n, std::vector<Interval>(n, zero));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) ein[a][b] = ric[a][b] - half * gm[a][b] * scalar;
  }
  return ein;
}

double max_magnitude(const IntervalMatrix& m) {
  double worst = 0;
  for (const auto& row : m) {
    for (const auto& v : row) worst = std::max({worst, std::fabs(v.lo_double()), std::fabs(v.hi_double())});
  }
  return worst;
}

}  // namespace tnv::curv
