#include "ilb/symbols.hpp"

namespace ilb {

Id Interner::intern(std::string_view s) {
  auto it = ids_.find(s);
  if (it != ids_.end()) return it->second;
  Id id = static_cast<Id>(names_.size());
  names_.emplace_back(s);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<Id> Interner::find(std::string_view s) const {
  auto it = ids_.find(s);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Id SymbolTable::predicate(std::string_view name, int arity) {
  if (auto existing = preds_.find(name)) {
    int have = arities_[static_cast<std::size_t>(*existing)];
    if (have != arity) {
      throw VocabularyError("predicate " + std::string(name) + "/" + std::to_string(arity) +
                            " conflicts with earlier use at arity " + std::to_string(have));
    }
    return *existing;
  }
  Id id = preds_.intern(name);
  arities_.push_back(arity);
  return id;
}

}  // namespace ilb
