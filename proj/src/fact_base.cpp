#include "ilb/fact_base.hpp"

#include <stdexcept>

namespace ilb {

FactBase::FactBase(std::shared_ptr<SymbolTable> symbols) : symbols_(std::move(symbols)) {
  if (!symbols_) throw std::invalid_argument("FactBase needs a symbol table");
}

std::uint64_t FactBase::slot_key(Id pred, int position, Id constant) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(pred)) << 40) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(position) & 0xff) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(constant));
}

bool FactBase::add(GroundAtom fact) {
  if (static_cast<int>(fact.args.size()) != symbols_->arity(fact.pred)) {
    throw std::invalid_argument("fact arity does not match predicate arity");
  }
  if (ids_.contains(fact)) return false;
  FactId id = static_cast<FactId>(facts_.size());
  by_pred_[fact.pred].push_back(id);
  for (std::size_t pos = 0; pos < fact.args.size(); ++pos) {
    by_slot_[slot_key(fact.pred, static_cast<int>(pos), fact.args[pos])].push_back(id);
  }
  ids_.emplace(fact, id);
  facts_.push_back(std::move(fact));
  return true;
}

bool FactBase::contains(const GroundAtom& fact) const { return ids_.contains(fact); }

FactId FactBase::find(const GroundAtom& fact) const {
  auto it = ids_.find(fact);
  return it == ids_.end() ? -1 : it->second;
}

std::span<const FactId> FactBase::facts_of(Id pred) const {
  auto it = by_pred_.find(pred);
  if (it == by_pred_.end()) return {};
  return it->second;
}

std::span<const FactId> FactBase::facts_with(Id pred, int position, Id constant) const {
  auto it = by_slot_.find(slot_key(pred, position, constant));
  if (it == by_slot_.end()) return {};
  return it->second;
}

std::string render(const FactBase& db) {
  std::string out;
  for (const GroundAtom& f : db.facts()) {
    out += render(f, db.symbols());
    out += ".\n";
  }
  return out;
}

}  // namespace ilb
