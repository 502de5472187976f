#pragma once

#include <array>

#include "tnv/forms/diffform.hpp"

namespace tnv::forms {

/// Sign of the permutation that sorts the concatenation of a and b, or 0
/// when they share an index.
int merge_sign(IndexMask a, IndexMask b);

DiffForm wedge(const DiffForm& a, const DiffForm& b);
/// Coordinate basis only; frame forms go through Coframe::to_coordinate.
DiffForm ext_d(const DiffForm& a);
DiffForm interior(const VecField& x, const DiffForm& a);

/// Cartan: i_X d a + d i_X a. A 0-form gives X(f).
DiffForm lie_form(const VecField& x, const DiffForm& a);
/// [X, Y]
VecField lie_vec(const VecField& x, const VecField& y);
/// (L_X g)_ij = X(g_ij) + g_kj d_i X^k + g_ik d_j X^k
SymTensor2 lie_metric(const VecField& x, const SymTensor2& g);

using Signature = std::array<int, 4>;

/// Hodge star on frame-basis forms of a 4-dimensional chart:
/// *theta^I = orientation * prod_{i in I} eta_i * eps(I, J) theta^J.
/// `orientation` is +1 when theta^0^theta^1^theta^2^theta^3 is positive.
DiffForm hodge_frame(const DiffForm& a, const Signature& eta, int orientation = 1);

}  // namespace tnv::forms
