// Copyright 2026 The norm-agent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "normagent/world.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace normagent {

std::string to_string(const GroundAction& a) {
  if (!a.argument) return a.schema;
  return a.schema + "(" + *a.argument + ")";
}

WorldState DomainSpec::initial_state() const {
  return WorldState{initial_atoms, initial_funds, false};
}

const ActionSchema* DomainSpec::find_action(std::string_view name) const {
  for (const auto& a : actions) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

const FluentSignature* DomainSpec::find_fluent(
    std::string_view predicate) const {
  for (const auto& f : fluents) {
    if (f.predicate == predicate) return &f;
  }
  return nullptr;
}

std::vector<GroundAction> DomainSpec::ground_actions() const {
  std::vector<GroundAction> out;
  for (const auto& schema : actions) {
    if (!schema.parameter) {
      out.push_back({schema.name, std::nullopt});
      continue;
    }
    for (const auto& obj : objects) out.push_back({schema.name, obj});
  }
  return out;
}

std::vector<AtomSet> Trace::atom_sets() const {
  std::vector<AtomSet> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.atoms);
  return out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t at = s.find(sep, start);
    std::string piece = trim(s.substr(start, at - start));
    if (!piece.empty()) out.push_back(std::move(piece));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

// Splits without dropping empty fields.
std::vector<std::string> split_fields(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t at = s.find(sep, start);
    out.push_back(trim(s.substr(start, at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

bool is_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

struct Line {
  int number = 0;
  std::string text;
};

struct Section {
  int number = 0;
  std::string header;
  std::vector<Line> lines;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw DomainError("line " + std::to_string(line) + ": " + what);
}

int parse_int(const Line& line, std::string_view text) {
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(line.number, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::pair<std::string, std::string> key_value(const Line& line) {
  std::size_t colon = line.text.find(':');
  if (colon == std::string::npos) fail(line.number, "expected 'key: value'");
  return {trim(std::string_view(line.text).substr(0, colon)),
          trim(std::string_view(line.text).substr(colon + 1))};
}

// "name" or "name(x)".
std::pair<std::string, std::optional<std::string>> signature(
    int number, std::string_view text) {
  std::string s = trim(text);
  std::size_t open = s.find('(');
  if (open == std::string::npos) {
    if (!is_identifier(s)) fail(number, "bad name '" + s + "'");
    return {s, std::nullopt};
  }
  if (s.back() != ')') fail(number, "expected ')' in '" + s + "'");
  std::string name = trim(std::string_view(s).substr(0, open));
  std::string param =
      trim(std::string_view(s).substr(open + 1, s.size() - open - 2));
  if (!is_identifier(name) || !is_identifier(param)) {
    fail(number, "bad signature '" + s + "'");
  }
  return {name, param};
}

GroundAtom ground_atom(int number, std::string_view text) {
  auto [pred, arg] = signature(number, text);
  return GroundAtom{pred, arg};
}

void parse_action(const Section& sec, DomainSpec& d) {
  auto [name, param] =
      signature(sec.number, std::string_view(sec.header).substr(6));
  if (d.find_action(name)) fail(sec.number, "duplicate action " + name);
  ActionSchema a;
  a.name = name;
  a.parameter = param;
  std::vector<std::string> vars;
  if (param) vars.push_back(*param);
  auto lit = [&](int number, const std::string& text) {
    try {
      return parse_literal(text, vars, d.objects);
    } catch (const VelError& e) {
      fail(number, e.what());
    }
  };
  for (const auto& line : sec.lines) {
    auto [key, value] = key_value(line);
    if (key == "pre") {
      for (const auto& item : split(value, ',')) {
        a.preconditions.push_back(lit(line.number, item));
      }
    } else if (key == "add" || key == "del") {
      for (const auto& item : split(value, ',')) {
        Literal l = lit(line.number, item);
        if (l.negated) fail(line.number, "effects must be positive atoms");
        (key == "add" ? a.add : a.del).push_back(l.atom);
      }
    } else if (key == "cost") {
      a.cost = parse_int(line, value);
      if (a.cost < 0) fail(line.number, "negative cost");
    } else if (key == "terminal") {
      if (value != "true" && value != "false") {
        fail(line.number, "terminal must be true or false");
      }
      a.terminal = value == "true";
    } else {
      fail(line.number, "unknown action field '" + key + "'");
    }
  }
  d.actions.push_back(std::move(a));
}

void parse_lexicon_line(const Line& line, DomainSpec& d) {
  auto [key, value] = key_value(line);
  std::istringstream head(key);
  std::string kind;
  std::string name;
  std::string rest;
  head >> kind >> name;
  if (head >> rest || name.empty()) fail(line.number, "bad lexicon key");
  if (kind == "object") {
    if (value.empty()) fail(line.number, "empty noun phrase");
    if (!d.lexicon.objects.emplace(name, value).second) {
      fail(line.number, "duplicate lexicon object " + name);
    }
    return;
  }
  if (kind != "verb") fail(line.number, "unknown lexicon entry '" + kind + "'");
  auto fields = split_fields(value, '|');
  if (fields.size() != 4 && fields.size() != 5) {
    fail(line.number, "verb entries need base | past | participle | gerund "
                      "[| complement]");
  }
  VerbEntry v;
  v.base = fields[0];
  v.past = fields[1];
  v.participle = fields[2];
  v.gerund = fields[3];
  if (fields.size() == 5) {
    if (fields[4] == "_") {
      v.takes_object = true;
    } else {
      v.complement = fields[4];
    }
  }
  if (v.base.empty() || v.past.empty() || v.participle.empty() ||
      v.gerund.empty()) {
    fail(line.number, "empty verb form");
  }
  if (!d.lexicon.verbs.emplace(name, v).second) {
    fail(line.number, "duplicate lexicon verb " + name);
  }
}

}  // namespace

DomainSpec load_domain(std::string_view text) {
  std::vector<Line> top;
  std::vector<Section> sections;
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::string s = trim(raw);
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') fail(number, "unterminated section header");
        sections.push_back({number, trim(s.substr(1, s.size() - 2)), {}});
        continue;
      }
      if (sections.empty()) {
        top.push_back({number, s});
      } else {
        sections.back().lines.push_back({number, s});
      }
    }
  }

  DomainSpec d;
  bool have_version = false;
  for (const auto& line : top) {
    auto [key, value] = key_value(line);
    if (key == "version") {
      if (value != "1") fail(line.number, "unsupported version " + value);
      have_version = true;
    } else if (key == "horizon") {
      d.horizon = parse_int(line, value);
    } else {
      fail(line.number, "unknown key '" + key + "'");
    }
  }
  if (!have_version) throw DomainError("missing 'version: 1' header");

  auto find_section = [&](std::string_view name) -> const Section* {
    const Section* found = nullptr;
    for (const auto& s : sections) {
      if (s.header == name) {
        if (found) fail(s.number, "duplicate section [" + s.header + "]");
        found = &s;
      }
    }
    return found;
  };
  for (const auto& s : sections) {
    bool known = s.header == "objects" || s.header == "fluents" ||
                 s.header == "initial" || s.header == "norms" ||
                 s.header == "lexicon" || s.header.starts_with("action ");
    if (!known) fail(s.number, "unknown section [" + s.header + "]");
  }

  if (const Section* s = find_section("objects")) {
    for (const auto& line : s->lines) {
      for (const auto& name : split(line.text, ',')) {
        for (const auto& word : split(name, ' ')) {
          if (!is_identifier(word)) fail(line.number, "bad object " + word);
          if (std::find(d.objects.begin(), d.objects.end(), word) !=
              d.objects.end()) {
            fail(line.number, "duplicate object " + word);
          }
          d.objects.push_back(word);
        }
      }
    }
  }
  if (const Section* s = find_section("fluents")) {
    for (const auto& line : s->lines) {
      for (const auto& item : split(line.text, ',')) {
        auto [name, param] = signature(line.number, item);
        if (d.find_fluent(name)) fail(line.number, "duplicate fluent " + name);
        d.fluents.push_back({name, param ? 1 : 0});
      }
    }
  }
  for (const auto& s : sections) {
    if (s.header.starts_with("action ")) parse_action(s, d);
  }
  if (const Section* s = find_section("initial")) {
    for (const auto& line : s->lines) {
      auto [key, value] = key_value(line);
      if (key == "atoms") {
        for (const auto& item : split(value, ',')) {
          d.initial_atoms.insert(ground_atom(line.number, item));
        }
      } else if (key == "funds") {
        d.initial_funds = parse_int(line, value);
      } else {
        fail(line.number, "unknown initial field '" + key + "'");
      }
    }
  }
  if (const Section* s = find_section("norms")) {
    for (const auto& line : s->lines) {
      auto [key, value] = key_value(line);
      NormDecl n;
      n.rank = parse_int(line, key);
      try {
        n.formula = parse_vel(value, d.objects);
      } catch (const VelError& e) {
        fail(line.number, std::string("malformed norm: ") + e.what());
      }
      d.norms.push_back(std::move(n));
    }
  }
  if (const Section* s = find_section("lexicon")) {
    for (const auto& line : s->lines) parse_lexicon_line(line, d);
  }
  for (const auto& f : d.fluents) d.lexicon.predicates.insert(f.predicate);
  validate_domain(d);
  return d;
}

DomainSpec load_domain_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_domain(buf.str());
}

namespace {

void check_atom(const Atom& a, const DomainSpec& d, const std::string& where) {
  const FluentSignature* f = d.find_fluent(a.predicate);
  if (!f) throw DomainError(where + ": undeclared fluent " + a.predicate);
  if ((f->arity == 1) != a.argument.has_value()) {
    throw DomainError(where + ": wrong arity for " + a.predicate);
  }
  if (a.argument && a.argument->kind == TermKind::kObject &&
      std::find(d.objects.begin(), d.objects.end(), a.argument->name) ==
          d.objects.end()) {
    throw DomainError(where + ": unknown object " + a.argument->name);
  }
}

}  // namespace

void check_formula(const Formula& f, const DomainSpec& d) {
  validate(f);
  for (const auto& lit : f.body.literals) {
    check_atom(lit.atom, d, "norm " + print_vel(f));
  }
  if (!f.prefix.empty() && d.objects.empty()) {
    throw DomainError("quantified norm " + print_vel(f) +
                      " over an empty object list");
  }
}

void validate_domain(const DomainSpec& d, bool require_lexicon) {
  if (d.horizon < 1) throw DomainError("horizon must be at least 1");
  if (d.initial_funds < 0) throw DomainError("negative initial funds");
  for (const auto& a : d.initial_atoms) {
    Atom atom{a.predicate, std::nullopt};
    if (a.object) atom.argument = Term{TermKind::kObject, *a.object};
    check_atom(atom, d, "initial state");
  }
  bool has_terminal = false;
  for (const auto& a : d.actions) {
    has_terminal = has_terminal || a.terminal;
    std::string where = "action " + a.name;
    for (const auto& lit : a.preconditions) check_atom(lit.atom, d, where);
    for (const auto& atom : a.add) check_atom(atom, d, where);
    for (const auto& atom : a.del) check_atom(atom, d, where);
    if (a.parameter && d.objects.empty()) {
      throw DomainError(where + ": parameter over an empty object list");
    }
  }
  if (!has_terminal) throw DomainError("domain has no terminal action");
  std::set<int> ranks;
  for (const auto& n : d.norms) {
    check_formula(n.formula, d);
    if (n.rank < 1) throw DomainError("norm ranks must be positive");
    if (!ranks.insert(n.rank).second) {
      throw DomainError("duplicate norm rank " + std::to_string(n.rank));
    }
  }
  for (std::size_t i = 0; i < d.norms.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (alpha_equal(d.norms[i].formula, d.norms[j].formula)) {
        throw DomainError("duplicate norm " + print_vel(d.norms[i].formula));
      }
    }
  }
  if (!require_lexicon) return;

  auto check_verb = [&](const std::string& name, bool takes_object) {
    const VerbEntry* v = d.lexicon.verb(name);
    if (!v) throw DomainError("no lexicon entry for " + name);
    if (v->takes_object != takes_object) {
      throw DomainError("lexicon entry for " + name +
                        (takes_object ? " needs" : " must not have") +
                        " an object slot");
    }
  };
  std::set<std::string> fluent_forms;
  for (const auto& f : d.fluents) {
    check_verb(f.predicate, f.arity == 1);
    const VerbEntry& v = *d.lexicon.verb(f.predicate);
    for (const auto* form : {&v.base, &v.gerund}) {
      if (!fluent_forms.insert(*form).second) {
        throw DomainError("ambiguous fluent verb form '" + *form + "'");
      }
    }
  }
  std::set<std::string> participles;
  for (const auto& f : d.fluents) {
    if (f.arity != 1) continue;
    const auto& p = d.lexicon.verb(f.predicate)->participle;
    if (!participles.insert(p).second) {
      throw DomainError("ambiguous fluent participle '" + p + "'");
    }
  }
  for (const auto& a : d.actions) check_verb(a.name, a.parameter.has_value());
  std::set<std::string> phrases;
  for (const auto& obj : d.objects) {
    const std::string* np = d.lexicon.noun_phrase(obj);
    if (!np) throw DomainError("no noun phrase for object " + obj);
    if (!phrases.insert(*np).second) {
      throw DomainError("duplicate noun phrase '" + *np + "'");
    }
  }
  for (const auto& [name, np] : d.lexicon.objects) {
    if (std::find(d.objects.begin(), d.objects.end(), name) ==
        d.objects.end()) {
      throw DomainError("lexicon names unknown object " + name);
    }
  }
}

namespace {

GroundAtom instantiate(const Atom& a, const ActionSchema& schema,
                       const GroundAction& g) {
  GroundAtom out{a.predicate, std::nullopt};
  if (a.argument) {
    if (a.argument->kind == TermKind::kVariable &&
        schema.parameter && a.argument->name == *schema.parameter) {
      out.object = g.argument;
    } else {
      out.object = a.argument->name;
    }
  }
  return out;
}

const ActionSchema& schema_for(const GroundAction& a, const DomainSpec& d) {
  const ActionSchema* schema = d.find_action(a.schema);
  if (!schema) throw DomainError("unknown action " + a.schema);
  if (schema->parameter.has_value() != a.argument.has_value()) {
    throw DomainError("wrong arity for action " + to_string(a));
  }
  return *schema;
}

}  // namespace

bool applicable(const WorldState& s, const GroundAction& a,
                const DomainSpec& d) {
  const ActionSchema& schema = schema_for(a, d);
  if (s.terminated || s.funds < schema.cost) return false;
  return std::all_of(
      schema.preconditions.begin(), schema.preconditions.end(),
      [&](const Literal& lit) {
        return s.atoms.contains(instantiate(lit.atom, schema, a)) !=
               lit.negated;
      });
}

WorldState apply(const WorldState& s, const GroundAction& a,
                 const DomainSpec& d) {
  if (!applicable(s, a, d)) {
    throw DomainError("action " + to_string(a) + " is not applicable");
  }
  const ActionSchema& schema = schema_for(a, d);
  WorldState next = s;
  for (const auto& atom : schema.del) {
    next.atoms.erase(instantiate(atom, schema, a));
  }
  for (const auto& atom : schema.add) {
    next.atoms.insert(instantiate(atom, schema, a));
  }
  next.funds -= schema.cost;
  next.terminated = schema.terminal;
  return next;
}

Trace rollout(const DomainSpec& d, const std::vector<GroundAction>& actions) {
  Trace t;
  t.states.push_back(d.initial_state());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (!applicable(t.states.back(), actions[i], d)) {
      throw RolloutError("action " + std::to_string(i) + " (" +
                             to_string(actions[i]) + ") is not applicable",
                         i);
    }
    t.states.push_back(apply(t.states.back(), actions[i], d));
    t.actions.push_back(actions[i]);
  }
  return t;
}

Verdict evaluate(const GroundInstance& inst, const Trace& trace) {
  auto sets = trace.atom_sets();
  return evaluate(inst, std::span<const AtomSet>(sets));
}

}  // namespace normagent
