#include "tnv/forms/chart.hpp"

#include <set>

#include "tnv/errors.hpp"

namespace tnv::forms {

Chart::Chart(std::vector<Symbol> coords, std::map<Symbol, std::string> periods)
    : coords_(std::move(coords)), periods_(std::move(periods)) {
  if (coords_.empty() || coords_.size() > 4) throw Error("chart dimension must be 1..4");
  std::set<Symbol> seen;
  for (Symbol c : coords_) {
    if (c.kind() != sym::SymbolKind::coordinate) throw Error("chart entry '" + c.name() + "' is not a coordinate");
    if (!seen.insert(c).second) throw Error("duplicate chart coordinate '" + c.name() + "'");
  }
}

std::shared_ptr<const Chart> Chart::euler() {
  static const auto chart = std::make_shared<const Chart>(
      std::vector<Symbol>{Coords::r(), Coords::psi(), Coords::theta(), Coords::phi()});
  return chart;
}

std::shared_ptr<const Chart> Chart::orbit() {
  static const auto chart =
      std::make_shared<const Chart>(std::vector<Symbol>{Coords::psi(), Coords::theta(), Coords::phi()});
  return chart;
}

int Chart::index_of(Symbol s) const {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == s) return static_cast<int>(i);
  }
  return -1;
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) { return a == b || *a == *b; }

Symbol Coords::r() { return Symbol::coordinate("r"); }
Symbol Coords::psi() { return Symbol::coordinate("psi"); }
Symbol Coords::theta() { return Symbol::coordinate("theta"); }
Symbol Coords::phi() { return Symbol::coordinate("phi"); }

}  // namespace tnv::forms
