#pragma once

#include <array>
#include <vector>

#include "tnv/forms/coframe.hpp"

namespace tnv::curv {

using forms::DiffForm;
using forms::Signature;
using forms::SymTensor2;
using sym::Expr;

/// Orthonormal coframe with signature eta.
class Tetrad {
 public:
  Tetrad(std::vector<DiffForm> thetas, Signature eta);

  const forms::Coframe& coframe() const { return coframe_; }
  const Signature& eta() const { return eta_; }
  const forms::ChartPtr& chart() const { return coframe_.chart(); }
  const DiffForm& theta(std::size_t a) const { return coframe_.theta(a); }
  SymTensor2 metric() const;

 private:
  forms::Coframe coframe_;
  Signature eta_;
};

template <typename T>
using Array2 = std::array<std::array<T, 4>, 4>;
template <typename T>
using Array3 = std::array<Array2<T>, 4>;
template <typename T>
using Array4 = std::array<Array3<T>, 4>;

/// One-forms indexed [a][b] = omega^a_b, frame basis.
using FormMatrix = std::vector<std::vector<DiffForm>>;

/// C^a_bc with d theta^a = -1/2 C^a_bc theta^b ^ theta^c.
Array3<Expr> anholonomy(const Tetrad& t);

/// Levi-Civita connection from the anholonomy coefficients.
FormMatrix solve_connection(const Tetrad& t);

/// omega_ab + omega_ba after lowering with eta; labelled non-zero coefficients.
std::vector<std::pair<std::string, Expr>> metricity_residuals(const Tetrad& t, const FormMatrix& omega);
/// d theta^a + omega^a_b ^ theta^b, frame basis.
std::vector<std::pair<std::string, Expr>> torsion_residuals(const Tetrad& t, const FormMatrix& omega);

/// Omega^a_b = d omega^a_b + omega^a_c ^ omega^c_b, frame basis.
FormMatrix curvature_forms(const Tetrad& t, const FormMatrix& omega);

/// R^a_bcd, read off Omega^a_b = 1/2 R^a_bcd theta^c ^ theta^d.
Array4<Expr> riemann_components(const FormMatrix& omega_curv);

struct CurvatureBundle {
  FormMatrix connection;
  FormMatrix curvature;
  Array4<Expr> riemann;  // R^a_bcd
  Array2<Expr> ricci;    // R_bd = R^a_bad
  Expr scalar;
  Array2<Expr> einstein;  // G_ab
  Expr kretschmann;
};

Array2<Expr> ricci(const Array4<Expr>& riemann);
Expr ricci_scalar(const Array2<Expr>& ric, const Signature& eta);
Array2<Expr> einstein(const Array2<Expr>& ric, const Expr& scalar, const Signature& eta);
/// sum over all index values of eta_a eta_b eta_c eta_d (R^a_bcd)^2
Expr kretschmann(const Array4<Expr>& riemann, const Signature& eta);

CurvatureBundle compute_bundle(const Tetrad& t);

/// Applies a substitution to every component of a bundle.
CurvatureBundle substitute(const CurvatureBundle& b, const sym::Bindings& bind);

/// First Bianchi R^a_[bcd] = 0 and R_ab = R_ba.
std::vector<std::pair<std::string, Expr>> bianchi_residuals(const Array4<Expr>& riemann);
std::vector<std::pair<std::string, Expr>> ricci_symmetry_residuals(const Array2<Expr>& ric);

// coordinate pipeline ------------------------------------------------------

struct CoordinateCurvature {
  std::vector<std::vector<Expr>> inverse_metric;
  std::vector<std::vector<std::vector<Expr>>> christoffel;  // Gamma^r_mn
  /// R^r_smn; only m < n stored, the rest follows by antisymmetry
  std::vector<std::vector<std::vector<std::vector<Expr>>>> riemann;
  std::vector<std::vector<Expr>> ricci;
  Expr scalar;
  std::vector<std::vector<Expr>> einstein;
};

/// Christoffel symbols, Riemann, Ricci and Einstein in coordinates.
/// SingularMetric when det g canonicalises to zero.
CoordinateCurvature christoffel_curvature(const SymTensor2& g);

/// Coordinate Riemann component R^r_smn for any index order.
Expr coordinate_riemann(const CoordinateCurvature& c, std::size_t r, std::size_t s, std::size_t m, std::size_t n);

/// Frame components R^a_bcd = theta^a_r R^r_smn e_b^s e_c^m e_d^n.
Array4<Expr> to_frame(const CoordinateCurvature& c, const Tetrad& t);
Array2<Expr> einstein_to_frame(const CoordinateCurvature& c, const Tetrad& t);

}  // namespace tnv::curv
