#include "ilb/atom.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace ilb {

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(), [](Term t) { return t.is_constant(); });
}

std::size_t hash_ids(std::span<const Id> ids, std::size_t seed) {
  std::size_t h = seed ^ 0xcbf29ce484222325ull;
  for (Id id : ids) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(id)) + 0x9e3779b97f4a7c15ull +
         (h << 6) + (h >> 2);
  }
  return h;
}

Atom to_atom(const GroundAtom& g) {
  Atom a;
  a.pred = g.pred;
  a.args.reserve(g.args.size());
  for (Id c : g.args) a.args.push_back(Term::constant(c));
  return a;
}

GroundAtom to_ground(const Atom& a) {
  GroundAtom g;
  g.pred = a.pred;
  g.args.reserve(a.args.size());
  for (Term t : a.args) {
    if (!t.is_constant()) throw std::invalid_argument("atom is not ground");
    g.args.push_back(t.id());
  }
  return g;
}

void Substitution::bind(Id var, Term image) {
  auto it = std::lower_bound(map_.begin(), map_.end(), var,
                             [](const auto& e, Id v) { return e.first < v; });
  if (it != map_.end() && it->first == var) {
    if (it->second != image) throw std::logic_error("conflicting binding for variable");
    return;
  }
  map_.insert(it, {var, image});
}

bool Substitution::bound(Id var) const {
  auto it = std::lower_bound(map_.begin(), map_.end(), var,
                             [](const auto& e, Id v) { return e.first < v; });
  return it != map_.end() && it->first == var;
}

Term Substitution::image(Id var) const {
  auto it = std::lower_bound(map_.begin(), map_.end(), var,
                             [](const auto& e, Id v) { return e.first < v; });
  if (it != map_.end() && it->first == var) return it->second;
  return Term::variable(var);
}

Term Substitution::apply(Term t) const {
  return t.is_variable() ? image(t.id()) : t;
}

Atom Substitution::apply(const Atom& a) const {
  Atom out;
  out.pred = a.pred;
  out.args.reserve(a.args.size());
  for (Term t : a.args) out.args.push_back(apply(t));
  return out;
}

Substitution Substitution::compose(const Substitution& outer, const Substitution& inner) {
  Substitution out;
  for (const auto& [v, t] : inner.entries()) out.bind(v, outer.apply(t));
  for (const auto& [v, t] : outer.entries()) {
    if (!out.bound(v)) out.bind(v, t);
  }
  return out;
}

std::vector<Id> Conjunction::variables() const {
  std::vector<Id> order;
  for (const Atom& a : atoms) {
    for (Term t : a.args) {
      if (t.is_variable() && std::find(order.begin(), order.end(), t.id()) == order.end()) {
        order.push_back(t.id());
      }
    }
  }
  return order;
}

Conjunction apply(const Substitution& s, const Conjunction& c) {
  Conjunction out;
  out.atoms.reserve(c.atoms.size());
  for (const Atom& a : c.atoms) out.atoms.push_back(s.apply(a));
  // Groups survive only where the members stay variables.
  for (const auto& group : c.distinct_groups) {
    std::vector<Id> kept;
    for (Id v : group) {
      Term t = s.image(v);
      if (t.is_variable()) kept.push_back(t.id());
    }
    if (kept.size() >= 2) out.distinct_groups.push_back(std::move(kept));
  }
  return out;
}

std::pair<Conjunction, Substitution> variabilize(std::span<const GroundAtom> atoms) {
  Conjunction out;
  Substitution inverse;
  std::unordered_map<Id, Id> var_of;
  for (const GroundAtom& g : atoms) {
    Atom a;
    a.pred = g.pred;
    a.args.reserve(g.args.size());
    for (Id c : g.args) {
      auto it = var_of.find(c);
      if (it == var_of.end()) {
        Id v = static_cast<Id>(var_of.size());
        it = var_of.emplace(c, v).first;
        inverse.bind(v, Term::constant(c));
      }
      a.args.push_back(Term::variable(it->second));
    }
    out.atoms.push_back(std::move(a));
  }
  return {std::move(out), std::move(inverse)};
}

std::string render(Term t, const SymbolTable& st) {
  if (t.is_constant()) return st.constant_name(t.id());
  return "V" + std::to_string(t.id());
}

std::string render(const Atom& a, const SymbolTable& st) {
  std::string out = st.predicate_name(a.pred);
  if (a.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ',';
    out += render(a.args[i], st);
  }
  out += ')';
  return out;
}

std::string render(const GroundAtom& a, const SymbolTable& st) {
  std::string out = st.predicate_name(a.pred);
  if (a.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ',';
    out += st.constant_name(a.args[i]);
  }
  out += ')';
  return out;
}

std::string render(const Conjunction& c, const SymbolTable& st) {
  std::string out;
  for (std::size_t i = 0; i < c.atoms.size(); ++i) {
    if (i) out += ',';
    out += render(c.atoms[i], st);
  }
  for (const auto& group : c.distinct_groups) {
    if (!out.empty()) out += ',';
    out += "unique([";
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i) out += ',';
      out += "V" + std::to_string(group[i]);
    }
    out += "])";
  }
  return out;
}

}  // namespace ilb
