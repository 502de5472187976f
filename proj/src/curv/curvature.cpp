#include "tnv/curv/curvature.hpp"

#include "tnv/errors.hpp"

namespace tnv::curv {

using forms::Basis;
using forms::IndexMask;

Tetrad::Tetrad(std::vector<DiffForm> thetas, Signature eta) : coframe_(std::move(thetas)), eta_(eta) {
  if (coframe_.dim() != 4) throw Error("a tetrad needs four one-forms");
  for (int e : eta_) {
    if (e != 1 && e != -1) throw Error("signature entries must be +1 or -1");
  }
}

SymTensor2 Tetrad::metric() const { return coframe_.metric(std::vector<int>(eta_.begin(), eta_.end())); }

namespace {

IndexMask pair_mask(std::size_t i, std::size_t j) { return (1u << i) | (1u << j); }

std::string idx(std::initializer_list<std::size_t> v) {
  std::string s;
  for (std::size_t i : v) s += std::to_string(i);
  return s;
}

DiffForm zero_frame(const forms::ChartPtr& chart, int degree) { return DiffForm(chart, degree, Basis::frame); }

}  // namespace

Array3<Expr> anholonomy(const Tetrad& t) {
  Array3<Expr> c{};
  for (std::size_t a = 0; a < 4; ++a) {
    DiffForm d = t.coframe().d_frame(a);
    for (std::size_t b = 0; b < 4; ++b) {
      for (std::size_t e = b + 1; e < 4; ++e) {
        Expr v = d.coeff(pair_mask(b, e));
        c[a][b][e] = -v;
        c[a][e][b] = v;
      }
    }
  }
  return c;
}

FormMatrix solve_connection(const Tetrad& t) {
  Array3<Expr> up = anholonomy(t);
  const auto& eta = t.eta();
  Array3<Expr> low{};
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      for (std::size_t c = 0; c < 4; ++c) low[a][b][c] = eta[a] > 0 ? up[a][b][c] : -up[a][b][c];
    }
  }
  FormMatrix omega(4, std::vector<DiffForm>(4, zero_frame(t.chart(), 1)));
  Expr half = Expr::rational(1, 2);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      if (a == b) continue;
      for (std::size_t c = 0; c < 4; ++c) {
        Expr g = half * (low[c][a][b] - low[a][b][c] - low[b][c][a]);
        if (g.is_zero()) continue;
        omega[a][b].add(1u << c, eta[a] > 0 ? g : -g);
      }
    }
  }
  return omega;
}

std::vector<std::pair<std::string, Expr>> metricity_residuals(const Tetrad& t, const FormMatrix& omega) {
  std::vector<std::pair<std::string, Expr>> out;
  const auto& eta = t.eta();
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a; b < 4; ++b) {
      DiffForm s = Expr(eta[a]) * omega[a][b] + Expr(eta[b]) * omega[b][a];
      for (const auto& [m, v] : s.terms()) out.emplace_back("omega_" + idx({a, b}) + " mask " + std::to_string(m), v);
    }
  }
  return out;
}

std::vector<std::pair<std::string, Expr>> torsion_residuals(const Tetrad& t, const FormMatrix& omega) {
  std::vector<std::pair<std::string, Expr>> out;
  for (std::size_t a = 0; a < 4; ++a) {
    DiffForm r = t.coframe().d_frame(a);
    for (std::size_t b = 0; b < 4; ++b) r = r + forms::wedge(omega[a][b], DiffForm::unit(t.chart(), static_cast<int>(b), Basis::frame));
    for (const auto& [m, v] : r.terms()) out.emplace_back("dtheta" + idx({a}) + " mask " + std::to_string(m), v);
  }
  return out;
}

FormMatrix curvature_forms(const Tetrad& t, const FormMatrix& omega) {
  FormMatrix out(4, std::vector<DiffForm>(4, zero_frame(t.chart(), 2)));
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      DiffForm o = zero_frame(t.chart(), 2);
      if (!omega[a][b].is_zero()) {
        o = t.coframe().to_frame(forms::ext_d(t.coframe().to_coordinate(omega[a][b])));
      }
      for (std::size_t c = 0; c < 4; ++c) {
        if (omega[a][c].is_zero() || omega[c][b].is_zero()) continue;
        o = o + forms::wedge(omega[a][c], omega[c][b]);
      }
      out[a][b] = o;
    }
  }
  return out;
}

Array4<Expr> riemann_components(const FormMatrix& curv) {
  Array4<Expr> r{};
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      for (std::size_t c = 0; c < 4; ++c) {
        for (std::size_t d = c + 1; d < 4; ++d) {
          Expr v = curv[a][b].coeff(pair_mask(c, d));
          r[a][b][c][d] = v;
          r[a][b][d][c] = -v;
        }
      }
    }
  }
  return r;
}

Array2<Expr> ricci(const Array4<Expr>& riemann) {
  Array2<Expr> out{};
  for (std::size_t b = 0; b < 4; ++b) {
    for (std::size_t d = 0; d < 4; ++d) {
      Expr s;
      for (std::size_t a = 0; a < 4; ++a) s += riemann[a][b][a][d];
      out[b][d] = s;
    }
  }
  return out;
}

Expr ricci_scalar(const Array2<Expr>& ric, const Signature& eta) {
  Expr s;
  for (std::size_t a = 0; a < 4; ++a) s += eta[a] > 0 ? ric[a][a] : -ric[a][a];
  return s;
}

Array2<Expr> einstein(const Array2<Expr>& ric, const Expr& scalar, const Signature& eta) {
  Array2<Expr> g = ric;
  Expr half = Expr::rational(1, 2) * scalar;
  for (std::size_t a = 0; a < 4; ++a) g[a][a] -= eta[a] > 0 ? half : -half;
  return g;
}

Expr kretschmann(const Array4<Expr>& riemann, const Signature& eta) {
  Expr k;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      for (std::size_t c = 0; c < 4; ++c) {
        for (std::size_t d = c + 1; d < 4; ++d) {
          const Expr& v = riemann[a][b][c][d];
          if (v.is_zero()) continue;
          int s = eta[a] * eta[b] * eta[c] * eta[d];
          // (c, d) and (d, c) contribute equally
          Expr sq = Expr(2) * v * v;
          k += s > 0 ? sq : -sq;
        }
      }
    }
  }
  return k;
}

CurvatureBundle compute_bundle(const Tetrad& t) {
  CurvatureBundle b;
  b.connection = solve_connection(t);
  b.curvature = curvature_forms(t, b.connection);
  b.riemann = riemann_components(b.curvature);
  b.ricci = ricci(b.riemann);
  b.scalar = ricci_scalar(b.ricci, t.eta());
  b.einstein = einstein(b.ricci, b.scalar, t.eta());
  b.kretschmann = kretschmann(b.riemann, t.eta());
  return b;
}

namespace {

DiffForm substitute_form(const DiffForm& f, const sym::Bindings& bind) {
  DiffForm r(f.chart(), f.degree(), f.basis());
  for (const auto& [m, c] : f.terms()) r.add(m, sym::substitute(c, bind));
  return r;
}

FormMatrix substitute_forms(const FormMatrix& m, const sym::Bindings& bind) {
  FormMatrix out = m;
  for (auto& row : out) {
    for (auto& f : row) f = substitute_form(f, bind);
  }
  return out;
}

}  // namespace

CurvatureBundle substitute(const CurvatureBundle& b, const sym::Bindings& bind) {
  CurvatureBundle r;
  r.connection = substitute_forms(b.connection, bind);
  r.curvature = substitute_forms(b.curvature, bind);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t c = 0; c < 4; ++c) {
      for (std::size_t d = 0; d < 4; ++d) {
        for (std::size_t e = 0; e < 4; ++e) r.riemann[a][c][d][e] = sym::substitute(b.riemann[a][c][d][e], bind);
      }
      r.ricci[a][c] = sym::substitute(b.ricci[a][c], bind);
      r.einstein[a][c] = sym::substitute(b.einstein[a][c], bind);
    }
  }
  r.scalar = sym::substitute(b.scalar, bind);
  r.kretschmann = sym::substitute(b.kretschmann, bind);
  return r;
}

std::vector<std::pair<std::string, Expr>> bianchi_residuals(const Array4<Expr>& r) {
  std::vector<std::pair<std::string, Expr>> out;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      for (std::size_t c = b + 1; c < 4; ++c) {
        for (std::size_t d = c + 1; d < 4; ++d) {
          out.emplace_back("R^" + idx({a}) + "_[" + idx({b, c, d}) + "]", r[a][b][c][d] + r[a][c][d][b] + r[a][d][b][c]);
        }
      }
    }
  }
  return out;
}

std::vector<std::pair<std::string, Expr>> ricci_symmetry_residuals(const Array2<Expr>& ric) {
  std::vector<std::pair<std::string, Expr>> out;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) out.emplace_back("R_" + idx({a, b}) + " - R_" + idx({b, a}), ric[a][b] - ric[b][a]);
  }
  return out;
}

// coordinate pipeline ------------------------------------------------------

CoordinateCurvature christoffel_curvature(const SymTensor2& g) {
  const auto& chart = g.chart();
  std::size_t n = chart->dim();
  CoordinateCurvature c;
  c.inverse_metric = g.inverse();
  const auto& gi = c.inverse_metric;

  // dg[k][i][j] = d_k g_ij
  std::vector<std::vector<std::vector<Expr>>> dg(n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n)));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        dg[k][i][j] = sym::diff(g(i, j), chart->coord(k));
        dg[k][j][i] = dg[k][i][j];
      }
    }
  }

  Expr half = Expr::rational(1, 2);
  c.christoffel.assign(n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n)));
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = m; k < n; ++k) {
      // lowered Gamma_s,mk
      std::vector<Expr> low(n);
      for (std::size_t s = 0; s < n; ++s) low[s] = half * (dg[m][s][k] + dg[k][s][m] - dg[s][m][k]);
      for (std::size_t r = 0; r < n; ++r) {
        Expr v;
        for (std::size_t s = 0; s < n; ++s) {
          if (!gi[r][s].is_zero() && !low[s].is_zero()) v += gi[r][s] * low[s];
        }
        c.christoffel[r][m][k] = v;
        c.christoffel[r][k][m] = v;
      }
    }
  }
  const auto& G = c.christoffel;

  // d_m Gamma^r_ns
  std::vector<std::vector<std::vector<std::vector<Expr>>>> dG(
      n, std::vector<std::vector<std::vector<Expr>>>(n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n))));
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
          dG[m][r][a][b] = G[r][a][b].is_zero() ? Expr() : sym::diff(G[r][a][b], chart->coord(m));
          dG[m][r][b][a] = dG[m][r][a][b];
        }
      }
    }
  }

  c.riemann.assign(n, std::vector<std::vector<std::vector<Expr>>>(
                          n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n))));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = m + 1; k < n; ++k) {
          Expr v = dG[m][r][k][s] - dG[k][r][m][s];
          for (std::size_t l = 0; l < n; ++l) {
            if (!G[r][m][l].is_zero() && !G[l][k][s].is_zero()) v += G[r][m][l] * G[l][k][s];
            if (!G[r][k][l].is_zero() && !G[l][m][s].is_zero()) v -= G[r][k][l] * G[l][m][s];
          }
          c.riemann[r][s][m][k] = v;
        }
      }
    }
  }

  c.ricci.assign(n, std::vector<Expr>(n));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t k = s; k < n; ++k) {
      Expr v;
      for (std::size_t r = 0; r < n; ++r) v += coordinate_riemann(c, r, s, r, k);
      c.ricci[s][k] = v;
      if (k != s) {
        Expr w;
        for (std::size_t r = 0; r < n; ++r) w += coordinate_riemann(c, r, k, r, s);
        c.ricci[k][s] = w;
      }
    }
  }
  Expr scalar;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!gi[i][j].is_zero() && !c.ricci[i][j].is_zero()) scalar += gi[i][j] * c.ricci[i][j];
    }
  }
  c.scalar = scalar;
  c.einstein.assign(n, std::vector<Expr>(n));
  Expr hs = half * scalar;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c.einstein[i][j] = c.ricci[i][j] - hs * g(i, j);
  }
  return c;
}

Expr coordinate_riemann(const CoordinateCurvature& c, std::size_t r, std::size_t s, std::size_t m, std::size_t n) {
  if (m == n) return Expr();
  if (m < n) return c.riemann[r][s][m][n];
  return -c.riemann[r][s][n][m];
}

Array4<Expr> to_frame(const CoordinateCurvature& c, const Tetrad& t) {
  const auto& e = t.coframe().matrix();    // theta^a = e[a][i] dx^i
  const auto& inv = t.coframe().inverse();  // e_b = inv[i][b] d_i
  std::size_t n = 4;
  // pair contraction over (m, n) first
  Array4<Expr> stage1{};  // [r][s][c][d] for c < d
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t cc = 0; cc < n; ++cc) {
        for (std::size_t d = cc + 1; d < n; ++d) {
          Expr v;
          for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t k = m + 1; k < n; ++k) {
              const Expr& R = c.riemann[r][s][m][k];
              if (R.is_zero()) continue;
              Expr w = inv[m][cc] * inv[k][d] - inv[k][cc] * inv[m][d];
              if (!w.is_zero()) v += R * w;
            }
          }
          stage1[r][s][cc][d] = v;
        }
      }
    }
  }
  Array4<Expr> out{};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t cc = 0; cc < n; ++cc) {
        for (std::size_t d = cc + 1; d < n; ++d) {
          Expr v;
          for (std::size_t r = 0; r < n; ++r) {
            if (e[a][r].is_zero()) continue;
            for (std::size_t s = 0; s < n; ++s) {
              if (inv[s][b].is_zero() || stage1[r][s][cc][d].is_zero()) continue;
              v += e[a][r] * inv[s][b] * stage1[r][s][cc][d];
            }
          }
          out[a][b][cc][d] = v;
          out[a][b][d][cc] = -v;
        }
      }
    }
  }
  return out;
}

Array2<Expr> einstein_to_frame(const CoordinateCurvature& c, const Tetrad& t) {
  const auto& inv = t.coframe().inverse();
  Array2<Expr> out{};
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      Expr v;
      for (std::size_t i = 0; i < 4; ++i) {
        if (inv[i][a].is_zero()) continue;
        for (std::size_t j = 0; j < 4; ++j) {
          if (inv[j][b].is_zero() || c.einstein[i][j].is_zero()) continue;
          v += inv[i][a] * inv[j][b] * c.einstein[i][j];
        }
      }
      out[a][b] = v;
    }
  }
  return out;
}

}  // namespace tnv::curv
