#pragma once

#include <array>
#include <vector>

#include "tnv/forms/calculus.hpp"
#include "tnv/report/check.hpp"

namespace tnv::forms {

/// n coordinate-basis one-forms theta^a on an n-dimensional chart, with the
/// matrix E (theta^a = E[a][i] dx^i) and its inverse.
class Coframe {
 public:
  /// SingularCoframe when det E canonicalises to zero.
  explicit Coframe(std::vector<DiffForm> thetas);

  const ChartPtr& chart() const { return chart_; }
  std::size_t dim() const { return thetas_.size(); }
  const DiffForm& theta(std::size_t a) const { return thetas_[a]; }
  const std::vector<std::vector<Expr>>& matrix() const { return e_; }
  /// inv[i][a] with dx^i = inv[i][a] theta^a
  const std::vector<std::vector<Expr>>& inverse() const { return inv_; }
  const Expr& det() const { return det_; }

  DiffForm to_coordinate(const DiffForm& a) const;
  DiffForm to_frame(const DiffForm& a) const;
  /// Frame vector e_a dual to theta^a.
  VecField frame_vector(std::size_t a) const;
  /// sum_a eta_a theta^a (x) theta^a
  SymTensor2 metric(const std::vector<int>& eta) const;
  /// d theta^a, expressed in the frame basis.
  DiffForm d_frame(std::size_t a) const;

 private:
  DiffForm convert(const DiffForm& a, const std::vector<std::vector<Expr>>& m, Basis target) const;

  ChartPtr chart_;
  std::vector<DiffForm> thetas_;
  std::vector<std::vector<Expr>> e_;
  std::vector<std::vector<Expr>> inv_;
  Expr det_;
};

/// Structure constants c[k][i][j], antisymmetric in (i, j).
using StructureConstants = std::vector<std::vector<std::vector<Expr>>>;

/// Checks d omega^k = - sum_{i<j} c^k_ij omega^i ^ omega^j for each k.
report::Check dual_structure_check(const std::vector<DiffForm>& omegas, const StructureConstants& c,
                                   std::string id = "dual-structure", std::uint64_t seed = 0);

}  // namespace tnv::forms
