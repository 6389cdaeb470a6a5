#include "ilb/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ilb {
namespace {

bool lower_initial(std::string_view s) { return !s.empty() && std::islower(static_cast<unsigned char>(s[0])); }
bool upper_initial(std::string_view s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

struct Cursor {
  std::string_view s;
  int line;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c, const char* context) {
    if (!eat(c)) {
      throw ParseError(line, std::string("expected '") + c + "' " + context);
    }
  }
  std::string_view ident() {
    skip_ws();
    std::size_t start = i;
    if (i >= s.size() || !std::isalpha(static_cast<unsigned char>(s[i]))) {
      throw ParseError(line, "expected identifier");
    }
    ++i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
      ++i;
    }
    return s.substr(start, i - start);
  }
  double number() {
    skip_ws();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), value);
    if (ec != std::errc{}) throw ParseError(line, "expected a probability");
    i = static_cast<std::size_t>(ptr - s.data());
    return value;
  }
};

std::string_view strip_comment(std::string_view raw) {
  auto pos = raw.find('%');
  return pos == std::string_view::npos ? raw : raw.substr(0, pos);
}

GroundAtom parse_fact_atom(Cursor& c, SymbolTable& st) {
  std::string_view name = c.ident();
  if (!lower_initial(name)) {
    throw ParseError(c.line, "variables are not allowed in ground facts");
  }
  std::vector<Id> args;
  c.expect('(', "after the predicate name");
  do {
    std::string_view arg = c.ident();
    if (upper_initial(arg)) {
      throw ParseError(c.line, "variables are not allowed in ground facts");
    }
    if (c.peek() == '(') throw ParseError(c.line, "nested terms are not supported");
    args.push_back(st.constant(arg));
  } while (c.eat(','));
  c.expect(')', "to close the argument list");
  GroundAtom g;
  try {
    g.pred = st.predicate(name, static_cast<int>(args.size()));
  } catch (const VocabularyError& e) {
    throw ParseError(c.line, e.what());
  }
  g.args = std::move(args);
  return g;
}

// Variable scope of one rule.
struct VarScope {
  VariableNaming naming;
  std::unordered_map<std::string, Id, StringHash, StringEq> ids;
  int line;

  Id id_for(std::string_view name) {
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    Id id;
    if (naming == VariableNaming::kFirstOccurrence) {
      id = static_cast<Id>(ids.size());
    } else {
      if (name.size() < 2 || name[0] != 'V') {
        throw ParseError(line, "expected a V<digits> variable name");
      }
      int value = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), value);
      if (ec != std::errc{} || ptr != name.data() + name.size()) {
        throw ParseError(line, "expected a V<digits> variable name");
      }
      id = value;
    }
    ids.emplace(std::string(name), id);
    return id;
  }
};

Atom parse_rule_atom(Cursor& c, SymbolTable& st, VarScope& scope) {
  std::string_view name = c.ident();
  if (!lower_initial(name)) throw ParseError(c.line, "predicate names must start lowercase");
  std::vector<Term> args;
  c.expect('(', "after the predicate name");
  do {
    std::string_view arg = c.ident();
    if (c.peek() == '(') throw ParseError(c.line, "nested terms are not supported");
    if (upper_initial(arg)) {
      args.push_back(Term::variable(scope.id_for(arg)));
    } else {
      args.push_back(Term::constant(st.constant(arg)));
    }
  } while (c.eat(','));
  c.expect(')', "to close the argument list");
  Atom a;
  try {
    a.pred = st.predicate(name, static_cast<int>(args.size()));
  } catch (const VocabularyError& e) {
    throw ParseError(c.line, e.what());
  }
  a.args = std::move(args);
  return a;
}

std::vector<Id> parse_unique(Cursor& c, VarScope& scope) {
  c.expect('(', "after unique");
  c.expect('[', "to open the variable list");
  std::vector<Id> group;
  do {
    std::string_view name = c.ident();
    if (!upper_initial(name)) throw ParseError(c.line, "unique lists variables only");
    group.push_back(scope.id_for(name));
  } while (c.eat(','));
  c.expect(']', "to close the variable list");
  c.expect(')', "to close unique");
  return group;
}

// Distinctness groups may only name variables that occur in the atoms.
void check_groups_cover(const Conjunction& body, int line) {
  std::vector<Id> vars = body.variables();
  for (const auto& group : body.distinct_groups) {
    for (Id v : group) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
        throw ParseError(line, "unique mentions a variable absent from the atoms");
      }
    }
  }
}

ParsedRule parse_rule_line(Cursor& c, SymbolTable& st, VariableNaming naming) {
  ParsedRule rule;
  rule.prob = c.number();
  if (rule.prob < 0.0 || rule.prob > 1.0) {
    throw ParseError(c.line, "probability out of [0,1]");
  }
  c.expect(':', "after the probability");
  c.expect(':', "after the probability");
  VarScope scope{naming, {}, c.line};
  rule.head = parse_rule_atom(c, st, scope);
  c.expect(':', "before the rule body");
  c.expect('-', "before the rule body");
  do {
    c.skip_ws();
    if (c.peek() == '(') {
      c.eat('(');
      do {
        rule.body.atoms.push_back(parse_rule_atom(c, st, scope));
      } while (c.eat(','));
      c.expect(')', "to close the conjunct group");
    } else {
      // `unique` is reserved in rule bodies.
      std::size_t mark = c.i;
      std::string_view name = c.ident();
      if (name == "unique") {
        rule.body.distinct_groups.push_back(parse_unique(c, scope));
      } else {
        c.i = mark;
        rule.body.atoms.push_back(parse_rule_atom(c, st, scope));
      }
    }
  } while (c.eat(','));
  c.expect('.', "to end the rule");
  if (!c.eof()) throw ParseError(c.line, "trailing characters after the rule");
  check_groups_cover(rule.body, c.line);
  rule.var_count = static_cast<int>(scope.ids.size());
  return rule;
}

}  // namespace

FactBase parse_facts(std::istream& in, std::shared_ptr<SymbolTable> symbols) {
  FactBase db(symbols);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    Cursor c{strip_comment(raw), line_no};
    if (c.eof()) continue;
    GroundAtom g = parse_fact_atom(c, *symbols);
    c.expect('.', "to end the fact");
    if (!c.eof()) throw ParseError(line_no, "trailing characters after the fact");
    db.add(std::move(g));
  }
  return db;
}

FactBase parse_facts(std::string_view text, std::shared_ptr<SymbolTable> symbols) {
  std::istringstream in{std::string(text)};
  return parse_facts(in, std::move(symbols));
}

FactBase parse_facts_file(const std::string& path, std::shared_ptr<SymbolTable> symbols) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_facts(in, std::move(symbols));
}

std::vector<ParsedRule> parse_program(std::istream& in, SymbolTable& symbols,
                                      VariableNaming naming) {
  std::vector<ParsedRule> rules;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    Cursor c{strip_comment(raw), line_no};
    if (c.eof()) continue;
    rules.push_back(parse_rule_line(c, symbols, naming));
  }
  return rules;
}

std::vector<ParsedRule> parse_program(std::string_view text, SymbolTable& symbols,
                                      VariableNaming naming) {
  std::istringstream in{std::string(text)};
  return parse_program(in, symbols, naming);
}

GroundAtom parse_ground_atom(std::string_view text, SymbolTable& symbols) {
  Cursor c{text, 1};
  GroundAtom g = parse_fact_atom(c, symbols);
  if (!c.eof()) throw ParseError(1, "trailing characters after the atom");
  return g;
}

Atom parse_atom(std::string_view text, SymbolTable& symbols, VariableNaming naming) {
  Cursor c{text, 1};
  VarScope scope{naming, {}, 1};
  Atom a = parse_rule_atom(c, symbols, scope);
  if (!c.eof()) throw ParseError(1, "trailing characters after the atom");
  return a;
}

Conjunction parse_conjunction(std::string_view text, SymbolTable& symbols,
                              VariableNaming naming) {
  Cursor c{text, 1};
  VarScope scope{naming, {}, 1};
  Conjunction out;
  do {
    std::size_t mark = c.i;
    std::string_view name = c.ident();
    if (name == "unique") {
      out.distinct_groups.push_back(parse_unique(c, scope));
    } else {
      c.i = mark;
      out.atoms.push_back(parse_rule_atom(c, symbols, scope));
    }
  } while (c.eat(','));
  if (!c.eof()) throw ParseError(1, "trailing characters after the conjunction");
  // No group-coverage check here: a stored feature body may constrain its
  // fresh variables against variables living in the enclosing rule.
  return out;
}

}  // namespace ilb
