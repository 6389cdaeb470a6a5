#include "ilb/match.hpp"

#include <algorithm>
#include <stdexcept>

namespace ilb {
namespace {

class Matcher {
 public:
  Matcher(const Conjunction& c, const FactBase& db, const MatchSink& sink)
      : c_(c), db_(db), sink_(sink), vars_(c.variables()) {
    Id max_var = -1;
    for (Id v : vars_) max_var = std::max(max_var, v);
    for (const auto& group : c_.distinct_groups) {
      for (Id v : group) max_var = std::max(max_var, v);
    }
    binding_.assign(static_cast<std::size_t>(max_var + 1), -1);
    groups_of_.assign(binding_.size(), {});
    for (std::size_t g = 0; g < c_.distinct_groups.size(); ++g) {
      for (Id v : c_.distinct_groups[g]) {
        groups_of_[static_cast<std::size_t>(v)].push_back(g);
      }
    }
  }

  bool seed(const Substitution& init) {
    for (const auto& [v, t] : init.entries()) {
      if (!t.is_constant()) throw std::invalid_argument("initial bindings must be constants");
      if (static_cast<std::size_t>(v) >= binding_.size()) continue;
      binding_[static_cast<std::size_t>(v)] = t.id();
      if (!distinct_ok(v)) return false;
    }
    return true;
  }

  void run() { recurse(0); }

 private:
  bool distinct_ok(Id v) const {
    Id value = binding_[static_cast<std::size_t>(v)];
    for (std::size_t g : groups_of_[static_cast<std::size_t>(v)]) {
      for (Id other : c_.distinct_groups[g]) {
        if (other == v) continue;
        Id b = binding_[static_cast<std::size_t>(other)];
        if (b != -1 && b == value) return false;
      }
    }
    return true;
  }

  // Candidate facts for the atom given current bindings: the tightest index
  // list among bound argument positions, else every fact of the predicate.
  std::span<const FactId> candidates(const Atom& a) const {
    std::span<const FactId> best;
    bool have = false;
    for (std::size_t pos = 0; pos < a.args.size(); ++pos) {
      Term t = a.args[pos];
      Id c = -1;
      if (t.is_constant()) {
        c = t.id();
      } else if (binding_[static_cast<std::size_t>(t.id())] != -1) {
        c = binding_[static_cast<std::size_t>(t.id())];
      } else {
        continue;
      }
      auto list = db_.facts_with(a.pred, static_cast<int>(pos), c);
      if (!have || list.size() < best.size()) {
        best = list;
        have = true;
      }
    }
    return have ? best : db_.facts_of(a.pred);
  }

  bool recurse(std::size_t atom_index) {
    if (stopped_) return false;
    if (atom_index == c_.atoms.size()) {
      Substitution out;
      for (Id v : vars_) out.bind(v, Term::constant(binding_[static_cast<std::size_t>(v)]));
      if (!sink_(out)) {
        stopped_ = true;
        return false;
      }
      return true;
    }
    const Atom& a = c_.atoms[atom_index];
    for (FactId id : candidates(a)) {
      const GroundAtom& f = db_.fact(id);
      std::size_t trail_mark = trail_.size();
      bool ok = true;
      for (std::size_t pos = 0; pos < a.args.size() && ok; ++pos) {
        Term t = a.args[pos];
        if (t.is_constant()) {
          ok = t.id() == f.args[pos];
        } else {
          Id& slot = binding_[static_cast<std::size_t>(t.id())];
          if (slot == -1) {
            slot = f.args[pos];
            trail_.push_back(t.id());
            ok = distinct_ok(t.id());
          } else {
            ok = slot == f.args[pos];
          }
        }
      }
      if (ok) recurse(atom_index + 1);
      while (trail_.size() > trail_mark) {
        binding_[static_cast<std::size_t>(trail_.back())] = -1;
        trail_.pop_back();
      }
      if (stopped_) return false;
    }
    return true;
  }

  const Conjunction& c_;
  const FactBase& db_;
  const MatchSink& sink_;
  std::vector<Id> vars_;
  std::vector<Id> binding_;
  std::vector<std::vector<std::size_t>> groups_of_;
  std::vector<Id> trail_;
  bool stopped_ = false;
};

}  // namespace

void match(const Conjunction& c, const FactBase& db, const Substitution& init,
           const MatchSink& sink) {
  Matcher m(c, db, sink);
  if (!m.seed(init)) return;
  m.run();
}

void match(const Conjunction& c, const FactBase& db, const MatchSink& sink) {
  match(c, db, Substitution{}, sink);
}

std::vector<Substitution> match_all(const Conjunction& c, const FactBase& db,
                                    const Substitution& init) {
  std::vector<Substitution> out;
  match(c, db, init, [&](const Substitution& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

std::vector<Substitution> match_all(const Conjunction& c, const FactBase& db) {
  return match_all(c, db, Substitution{});
}

}  // namespace ilb
