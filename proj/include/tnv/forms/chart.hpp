#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tnv/sym/expr.hpp"

namespace tnv::forms {

using sym::Expr;
using sym::Symbol;

/// Ordered coordinate list. The order fixes the orientation.
class Chart {
 public:
  explicit Chart(std::vector<Symbol> coords, std::map<Symbol, std::string> periods = {});

  /// (r, psi, theta, phi)
  static std::shared_ptr<const Chart> euler();
  /// (psi, theta, phi), the orbit chart
  static std::shared_ptr<const Chart> orbit();

  std::size_t dim() const { return coords_.size(); }
  Symbol coord(std::size_t i) const { return coords_[i]; }
  const std::vector<Symbol>& coords() const { return coords_; }
  /// Position of s, or -1.
  int index_of(Symbol s) const;
  const std::map<Symbol, std::string>& periods() const { return periods_; }

  friend bool operator==(const Chart& a, const Chart& b) { return a.coords_ == b.coords_; }

 private:
  std::vector<Symbol> coords_;
  std::map<Symbol, std::string> periods_;
};

using ChartPtr = std::shared_ptr<const Chart>;

bool same_chart(const ChartPtr& a, const ChartPtr& b);

/// The standard coordinate symbols.
struct Coords {
  static Symbol r();
  static Symbol psi();
  static Symbol theta();
  static Symbol phi();
};

}  // namespace tnv::forms
