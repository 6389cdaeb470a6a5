#pragma once

#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "ilb/atom.hpp"

namespace ilb {

using FactId = std::int32_t;

// Deduplicated store of ground atoms with a per-(predicate, position,
// constant) index. Fact ids follow insertion order and never change.
class FactBase {
 public:
  explicit FactBase(std::shared_ptr<SymbolTable> symbols);

  // Returns false (and stores nothing) if the fact is already present.
  bool add(GroundAtom fact);

  bool contains(const GroundAtom& fact) const;
  // -1 if absent.
  FactId find(const GroundAtom& fact) const;

  std::size_t size() const { return facts_.size(); }
  const GroundAtom& fact(FactId id) const { return facts_.at(static_cast<std::size_t>(id)); }
  const std::vector<GroundAtom>& facts() const { return facts_; }

  std::span<const FactId> facts_of(Id pred) const;
  std::span<const FactId> facts_with(Id pred, int position, Id constant) const;

  const SymbolTable& symbols() const { return *symbols_; }
  const std::shared_ptr<SymbolTable>& symbols_ptr() const { return symbols_; }

 private:
  static std::uint64_t slot_key(Id pred, int position, Id constant);

  std::shared_ptr<SymbolTable> symbols_;
  std::vector<GroundAtom> facts_;
  std::unordered_map<GroundAtom, FactId, GroundAtomHash> ids_;
  std::unordered_map<Id, std::vector<FactId>> by_pred_;
  std::unordered_map<std::uint64_t, std::vector<FactId>> by_slot_;
};

std::string render(const FactBase& db);

}  // namespace ilb
