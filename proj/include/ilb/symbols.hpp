#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ilb {

using Id = std::int32_t;

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

struct StringEq {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const { return a == b; }
};

// Dense string interner. Ids are assigned in first-intern order, so a table
// populated from the same token sequence always yields the same ids.
class Interner {
 public:
  Id intern(std::string_view s);
  std::optional<Id> find(std::string_view s) const;
  const std::string& name(Id id) const { return names_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Id, StringHash, StringEq> ids_;
};

class VocabularyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shared vocabulary for one fact base: predicate symbols (name plus fixed
// arity) and constants. A predicate's arity is locked by its first use;
// reusing the name at a different arity throws VocabularyError.
class SymbolTable {
 public:
  Id predicate(std::string_view name, int arity);
  std::optional<Id> find_predicate(std::string_view name) const { return preds_.find(name); }
  int arity(Id pred) const { return arities_.at(static_cast<std::size_t>(pred)); }
  const std::string& predicate_name(Id pred) const { return preds_.name(pred); }
  std::size_t predicate_count() const { return preds_.size(); }

  Id constant(std::string_view name) { return consts_.intern(name); }
  std::optional<Id> find_constant(std::string_view name) const { return consts_.find(name); }
  const std::string& constant_name(Id c) const { return consts_.name(c); }
  std::size_t constant_count() const { return consts_.size(); }

 private:
  Interner preds_;
  std::vector<int> arities_;
  Interner consts_;
};

}  // namespace ilb
