#include "ilb/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

namespace ilb {
namespace {

constexpr std::uint64_t kPermutationCap = 20160;

using LocalKey = std::vector<std::int64_t>;

// Renaming-invariant sort key: free variables only expose their repetition
// pattern within the atom, so alpha-equivalent atoms compare equal.
LocalKey local_key(const Atom& a, const std::unordered_set<Id>& pinned) {
  LocalKey key;
  key.push_back(a.pred);
  std::unordered_map<Id, std::int64_t> rank;
  for (Term t : a.args) {
    if (t.is_constant()) {
      key.push_back(0);
      key.push_back(t.id());
    } else if (pinned.contains(t.id())) {
      key.push_back(1);
      key.push_back(t.id());
    } else {
      auto it = rank.find(t.id());
      if (it == rank.end()) it = rank.emplace(t.id(), static_cast<std::int64_t>(rank.size())).first;
      key.push_back(2);
      key.push_back(it->second);
    }
  }
  return key;
}

struct Renderer {
  const SymbolTable& st;
  const std::unordered_set<Id>& pinned;
  std::unordered_map<Id, int> rank;

  std::string var_token(Id v) {
    if (pinned.contains(v)) return "#" + std::to_string(v);
    auto it = rank.find(v);
    if (it == rank.end()) it = rank.emplace(v, static_cast<int>(rank.size())).first;
    return "$" + std::to_string(it->second);
  }

  std::string atom(const Atom& a) {
    std::string out = st.predicate_name(a.pred);
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ',';
      Term t = a.args[i];
      out += t.is_constant() ? st.constant_name(t.id()) : var_token(t.id());
    }
    out += ')';
    return out;
  }
};

std::string signature(const std::vector<const Atom*>& order,
                      const std::vector<std::vector<Id>>& groups,
                      const SymbolTable& st, const std::unordered_set<Id>& pinned) {
  Renderer r{st, pinned, {}};
  std::string out;
  for (const Atom* a : order) {
    out += r.atom(*a);
    out += ';';
  }
  std::vector<std::string> rendered_groups;
  for (const auto& group : groups) {
    std::vector<std::string> members;
    for (Id v : group) {
      if (pinned.contains(v) || r.rank.contains(v)) {
        members.push_back(pinned.contains(v) ? "#" + std::to_string(v)
                                             : "$" + std::to_string(r.rank.at(v)));
      } else {
        members.push_back("?" + std::to_string(v));
      }
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() < 2) continue;
    std::string g = "u[";
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) g += ',';
      g += members[i];
    }
    g += ']';
    rendered_groups.push_back(std::move(g));
  }
  std::sort(rendered_groups.begin(), rendered_groups.end());
  rendered_groups.erase(std::unique(rendered_groups.begin(), rendered_groups.end()),
                        rendered_groups.end());
  out += '|';
  for (const auto& g : rendered_groups) out += g;
  return out;
}

std::string canonical_impl(const std::vector<const Atom*>& fixed,
                           const std::vector<const Atom*>& pool,
                           const std::vector<std::vector<Id>>& groups,
                           const SymbolTable& st, const std::unordered_set<Id>& pinned) {
  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<LocalKey> keys(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) keys[i] = local_key(*pool[i], pinned);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    return a < b;
  });

  // Tied-key runs; the signature is minimized over permutations within them.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && keys[order[j]] == keys[order[i]]) ++j;
    if (j - i > 1) {
      runs.push_back({i, j});
      for (std::size_t n = 2; n <= j - i && combos <= kPermutationCap; ++n) combos *= n;
    }
    i = j;
  }

  auto render_order = [&](const std::vector<std::size_t>& ord) {
    std::vector<const Atom*> full = fixed;
    for (std::size_t idx : ord) full.push_back(pool[idx]);
    return signature(full, groups, st, pinned);
  };

  if (runs.empty() || combos > kPermutationCap) return render_order(order);

  std::string best;
  bool have = false;
  std::vector<std::size_t> work = order;
  // Depth-first over per-run permutations.
  auto explore = [&](auto&& self, std::size_t run_index) -> void {
    if (run_index == runs.size()) {
      std::string sig = render_order(work);
      if (!have || sig < best) {
        best = std::move(sig);
        have = true;
      }
      return;
    }
    auto [lo, hi] = runs[run_index];
    std::sort(work.begin() + static_cast<std::ptrdiff_t>(lo),
              work.begin() + static_cast<std::ptrdiff_t>(hi));
    do {
      self(self, run_index + 1);
    } while (std::next_permutation(work.begin() + static_cast<std::ptrdiff_t>(lo),
                                   work.begin() + static_cast<std::ptrdiff_t>(hi)));
  };
  explore(explore, 0);
  return best;
}

}  // namespace

std::string canonical_key(const Conjunction& c, const SymbolTable& st) {
  std::vector<const Atom*> pool;
  for (const Atom& a : c.atoms) pool.push_back(&a);
  return canonical_impl({}, pool, c.distinct_groups, st, {});
}

std::string canonical_key_pinned(const Conjunction& c, const SymbolTable& st,
                                 std::span<const Id> pinned) {
  std::vector<const Atom*> pool;
  for (const Atom& a : c.atoms) pool.push_back(&a);
  std::unordered_set<Id> pin(pinned.begin(), pinned.end());
  return canonical_impl({}, pool, c.distinct_groups, st, pin);
}

std::string canonical_rule_key(const Atom& head, const Conjunction& body,
                               const SymbolTable& st) {
  std::vector<const Atom*> pool;
  for (const Atom& a : body.atoms) pool.push_back(&a);
  return canonical_impl({&head}, pool, body.distinct_groups, st, {});
}

}  // namespace ilb
