#include "tnv/sym/symbol.hpp"

#include <array>
#include <atomic>
#include <mutex>
#include <unordered_map>

#include "tnv/errors.hpp"
#include "tnv/sym/poly.hpp"

namespace tnv::sym {
namespace {

constexpr std::size_t kMaxSymbols = std::size_t{1} << 16;

// Append-only interning table. Published entries are never mutated, so
// readers go through the atomic slot without locking.
class Registry {
 public:
  static Registry& instance() {
    static Registry r;
    return r;
  }

  const SymbolInfo& get(SymbolId id) const {
    const SymbolInfo* p = id < kMaxSymbols ? slots_[id].load(std::memory_order_acquire) : nullptr;
    if (p == nullptr) throw Error("invalid symbol id " + std::to_string(id));
    return *p;
  }

  std::optional<SymbolId> find(std::string_view name) {
    std::lock_guard lock(mu_);
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  SymbolId intern_named(std::string_view name, SymbolKind kind) {
    std::lock_guard lock(mu_);
    if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
      if (get(it->second).kind != kind) {
        throw Error("symbol '" + std::string(name) + "' already declared with another kind");
      }
      return it->second;
    }
    auto info = std::make_unique<SymbolInfo>();
    info->name = std::string(name);
    info->kind = kind;
    return publish(std::move(info));
  }

  SymbolId intern_function(std::string_view name, SymbolId argument) {
    std::lock_guard lock(mu_);
    if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
      const SymbolInfo& existing = get(it->second);
      if (existing.kind != SymbolKind::function || existing.order != 0 || existing.argument != argument) {
        throw Error("symbol '" + std::string(name) + "' already declared differently");
      }
      return it->second;
    }
    // second derivative first so each entry can point at its successor
    std::string base_name(name);
    SymbolId ids[3];
    SymbolId next = kNoSymbol;
    for (int order = 2; order >= 0; --order) {
      auto info = std::make_unique<SymbolInfo>();
      info->name = base_name + std::string(static_cast<std::size_t>(order), '\'');
      info->kind = SymbolKind::function;
      info->order = order;
      info->argument = argument;
      info->next = next;
      ids[order] = publish_unfinished(std::move(info));
      next = ids[order];
    }
    for (SymbolId id : ids) owned_[id]->base = ids[0];
    for (SymbolId id : ids) slots_[id].store(owned_[id].get(), std::memory_order_release);
    return ids[0];
  }

  SymbolId intern_trig(SymbolId coord, TrigFn fn) {
    std::lock_guard lock(mu_);
    const std::string& cname = get(coord).name;
    std::string sname = "sin(" + cname + ")";
    std::string cosname = "cos(" + cname + ")";
    if (auto it = by_name_.find(fn == TrigFn::sin ? sname : cosname); it != by_name_.end()) {
      return it->second;
    }
    auto cinfo = std::make_unique<SymbolInfo>();
    cinfo->name = cosname;
    cinfo->kind = SymbolKind::trig;
    cinfo->trig = TrigFn::cos;
    cinfo->argument = coord;
    SymbolId cid = publish_unfinished(std::move(cinfo));
    auto sinfo = std::make_unique<SymbolInfo>();
    sinfo->name = sname;
    sinfo->kind = SymbolKind::trig;
    sinfo->trig = TrigFn::sin;
    sinfo->argument = coord;
    sinfo->level = 1;
    SymbolId sid = publish_unfinished(std::move(sinfo));
    owned_[cid]->partner = sid;
    owned_[sid]->partner = cid;
    slots_[cid].store(owned_[cid].get(), std::memory_order_release);
    // sin^2 = 1 - cos^2; the radicand refers to cos, which is now published
    owned_[sid]->radicand = std::make_shared<const Poly>(Poly(1) - Poly::variable(Symbol(cid)).pow(2));
    slots_[sid].store(owned_[sid].get(), std::memory_order_release);
    return fn == TrigFn::sin ? sid : cid;
  }

  SymbolId intern_radical(const Poly& radicand, std::string_view alias) {
    // rendering the radicand reads the table, so do it before locking
    std::string key = radicand.str();
    int level = 1;
    for (SymbolId v : radicand.variables()) {
      const SymbolInfo& vi = get(v);
      if (vi.radicand) level = std::max(level, vi.level + 1);
    }
    std::lock_guard lock(mu_);
    if (auto it = radicals_.find(key); it != radicals_.end()) return it->second;
    std::string name = alias.empty() ? "sqrt(" + key + ")" : std::string(alias);
    if (by_name_.count(name) != 0) {
      throw Error("radical name '" + name + "' already in use");
    }
    auto info = std::make_unique<SymbolInfo>();
    info->name = name;
    info->kind = SymbolKind::radical;
    info->radicand = std::make_shared<const Poly>(radicand);
    info->level = level;
    SymbolId id = publish(std::move(info));
    radicals_.emplace(std::move(key), id);
    return id;
  }

 private:
  SymbolId publish_unfinished(std::unique_ptr<SymbolInfo> info) {
    auto id = static_cast<SymbolId>(owned_.size());
    if (id >= kMaxSymbols) throw Error("symbol table exhausted");
    info->id = id;
    if (info->base == kNoSymbol) info->base = id;
    by_name_.emplace(info->name, id);
    owned_.push_back(std::move(info));
    return id;
  }

  SymbolId publish(std::unique_ptr<SymbolInfo> info) {
    SymbolId id = publish_unfinished(std::move(info));
    slots_[id].store(owned_[id].get(), std::memory_order_release);
    return id;
  }

  std::mutex mu_;
  std::array<std::atomic<const SymbolInfo*>, kMaxSymbols> slots_{};
  std::vector<std::unique_ptr<SymbolInfo>> owned_;
  std::unordered_map<std::string, SymbolId> by_name_;
  std::unordered_map<std::string, SymbolId> radicals_;
};

}  // namespace

const SymbolInfo& symbol_info(SymbolId id) { return Registry::instance().get(id); }

bool name_less(SymbolId a, SymbolId b) {
  if (a == b) return false;
  const SymbolInfo& ia = symbol_info(a);
  const SymbolInfo& ib = symbol_info(b);
  if (ia.name != ib.name) return ia.name < ib.name;
  return a < b;
}

const SymbolInfo& Symbol::info() const { return symbol_info(id_); }

const Poly& Symbol::radicand() const {
  const auto& r = info().radicand;
  if (!r) throw Error("symbol '" + name() + "' has no defining relation");
  return *r;
}

Symbol Symbol::coordinate(std::string_view name) {
  return Symbol(Registry::instance().intern_named(name, SymbolKind::coordinate));
}

Symbol Symbol::parameter(std::string_view name) {
  return Symbol(Registry::instance().intern_named(name, SymbolKind::parameter));
}

Symbol Symbol::function(std::string_view name, Symbol argument) {
  if (argument.kind() != SymbolKind::coordinate) throw Error("function argument must be a coordinate");
  return Symbol(Registry::instance().intern_function(name, argument.id()));
}

Symbol Symbol::sin_of(Symbol coordinate) {
  if (coordinate.kind() != SymbolKind::coordinate) throw Error("trig argument must be a coordinate");
  return Symbol(Registry::instance().intern_trig(coordinate.id(), TrigFn::sin));
}

Symbol Symbol::cos_of(Symbol coordinate) {
  if (coordinate.kind() != SymbolKind::coordinate) throw Error("trig argument must be a coordinate");
  return Symbol(Registry::instance().intern_trig(coordinate.id(), TrigFn::cos));
}

Symbol Symbol::radical(const Poly& radicand, std::string_view alias) {
  if (radicand.is_zero()) throw Error("radical of zero");
  return Symbol(Registry::instance().intern_radical(radicand, alias));
}

std::optional<Symbol> Symbol::lookup(std::string_view name) {
  auto id = Registry::instance().find(name);
  if (!id) return std::nullopt;
  return Symbol(*id);
}

Symbol Symbol::derivative() const {
  const SymbolInfo& i = info();
  if (i.kind != SymbolKind::function) throw Error("'" + i.name + "' is not a function symbol");
  if (i.next == kNoSymbol) {
    throw DerivativeOrderError("derivative of '" + i.name + "' exceeds the second-order cap");
  }
  return Symbol(i.next);
}

}  // namespace tnv::sym
