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

#include "normagent/vel.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace normagent {

const std::string* Binding::lookup(std::string_view variable) const {
  for (const auto& [var, obj] : entries) {
    if (var == variable) return &obj;
  }
  return nullptr;
}

void validate(const Formula& f) {
  std::set<std::string> bound;
  for (const auto& q : f.prefix) {
    if (q.variable.empty()) throw VelError("empty variable name");
    if (!bound.insert(q.variable).second) {
      throw VelError("variable " + q.variable + " bound twice");
    }
  }
  if (f.body.literals.empty()) throw VelError("empty conjunction");
  std::set<std::string> used;
  for (const auto& lit : f.body.literals) {
    if (lit.atom.predicate.empty()) throw VelError("empty predicate name");
    if (lit.atom.argument && lit.atom.argument->kind == TermKind::kVariable) {
      const auto& name = lit.atom.argument->name;
      if (!bound.contains(name)) throw VelError("unbound variable " + name);
      used.insert(name);
    }
  }
  for (const auto& q : f.prefix) {
    if (!used.contains(q.variable)) {
      throw VelError("variable " + q.variable + " does not occur in the body");
    }
  }
}

std::string to_string(const Term& t) { return t.name; }

std::string to_string(const Atom& a) {
  if (!a.argument) return a.predicate;
  return a.predicate + "(" + a.argument->name + ")";
}

std::string to_string(const Literal& l) {
  return (l.negated ? "!" : "") + to_string(l.atom);
}

std::string to_string(const GroundAtom& a) {
  if (!a.object) return a.predicate;
  return a.predicate + "(" + *a.object + ")";
}

std::string print_vel(const Formula& f) {
  std::string out;
  for (const auto& q : f.prefix) {
    out += q.quantifier == Quantifier::kForall ? "forall " : "exists ";
    out += q.variable;
    out += ". ";
  }
  out += f.op == TemporalOp::kAlways ? "G " : "F ";
  if (f.body.negated) out += '!';
  out += '(';
  for (std::size_t i = 0; i < f.body.literals.size(); ++i) {
    if (i > 0) out += " & ";
    out += to_string(f.body.literals[i]);
  }
  out += ')';
  return out;
}

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> objects)
      : text_(text), objects_(objects) {}

  Formula formula() {
    Formula f;
    for (;;) {
      skip_space();
      std::size_t start = pos_;
      std::string word = peek_ident();
      if (word == "forall" || word == "exists") {
        pos_ += word.size();
        QuantifiedVar q;
        q.quantifier =
            word == "forall" ? Quantifier::kForall : Quantifier::kExists;
        q.variable = ident("variable");
        expect('.');
        for (const auto& other : f.prefix) {
          if (other.variable == q.variable) {
            throw VelSyntaxError("variable " + q.variable + " bound twice",
                                 start);
          }
        }
        f.prefix.push_back(std::move(q));
        continue;
      }
      if (word == "G" || word == "F") {
        pos_ += 1;
        f.op = word == "G" ? TemporalOp::kAlways : TemporalOp::kEventually;
        break;
      }
      throw VelSyntaxError("expected quantifier or temporal operator", start);
    }
    for (const auto& q : f.prefix) variables_.push_back(q.variable);
    f.body = body();
    skip_space();
    if (pos_ != text_.size()) throw VelSyntaxError("trailing input", pos_);
    try {
      validate(f);
    } catch (const VelError& e) {
      throw VelSyntaxError(e.what(), 0);
    }
    return f;
  }

  Literal single_literal() {
    Literal lit = literal();
    skip_space();
    if (pos_ != text_.size()) throw VelSyntaxError("trailing input", pos_);
    return lit;
  }

  std::vector<std::string> variables_;

 private:
  Conjunction body() {
    Conjunction c;
    skip_space();
    std::size_t save = pos_;
    if (consume('!')) {
      skip_space();
      if (peek() == '(') {
        c.negated = true;
      } else {
        pos_ = save;
      }
    }
    skip_space();
    if (consume('(')) {
      c.literals.push_back(literal());
      for (;;) {
        skip_space();
        if (consume('&')) {
          c.literals.push_back(literal());
          continue;
        }
        expect(')');
        break;
      }
    } else {
      c.literals.push_back(literal());
    }
    return c;
  }

  Literal literal() {
    Literal lit;
    skip_space();
    lit.negated = consume('!');
    lit.atom.predicate = ident("predicate");
    skip_space();
    if (consume('(')) {
      std::size_t at = pos_;
      std::string name = ident("argument");
      expect(')');
      if (std::find(variables_.begin(), variables_.end(), name) !=
          variables_.end()) {
        lit.atom.argument = Term{TermKind::kVariable, name};
      } else if (std::find(objects_.begin(), objects_.end(), name) !=
                 objects_.end()) {
        lit.atom.argument = Term{TermKind::kObject, name};
      } else {
        throw VelSyntaxError("unbound variable " + name, at);
      }
    }
    return lit;
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool consume(char c) {
    skip_space();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!consume(c)) {
      throw VelSyntaxError(std::string("expected '") + c + "'", pos_);
    }
  }

  std::string peek_ident() const {
    std::size_t end = pos_;
    while (end < text_.size() && is_ident_char(text_[end])) ++end;
    return std::string(text_.substr(pos_, end - pos_));
  }

  std::string ident(const char* what) {
    skip_space();
    std::string word = peek_ident();
    if (word.empty()) throw VelSyntaxError(std::string("expected ") + what, pos_);
    pos_ += word.size();
    return word;
  }

  std::string_view text_;
  std::span<const std::string> objects_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_vel(std::string_view text, std::span<const std::string> objects) {
  return Parser(text, objects).formula();
}

Literal parse_literal(std::string_view text,
                      std::span<const std::string> variables,
                      std::span<const std::string> objects) {
  Parser p(text, objects);
  p.variables_.assign(variables.begin(), variables.end());
  return p.single_literal();
}

namespace {

// Renames prefix variables to their position so that alpha-equivalent
// formulas share one literal multiset.
std::vector<Literal> positional_literals(const Formula& f) {
  std::map<std::string, std::string> rename;
  for (std::size_t i = 0; i < f.prefix.size(); ++i) {
    rename[f.prefix[i].variable] = "#" + std::to_string(i);
  }
  std::vector<Literal> lits = f.body.literals;
  for (auto& lit : lits) {
    if (lit.atom.argument && lit.atom.argument->kind == TermKind::kVariable) {
      lit.atom.argument->name = rename.at(lit.atom.argument->name);
    }
  }
  std::sort(lits.begin(), lits.end());
  return lits;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  if (a.op != b.op || a.body.negated != b.body.negated) return false;
  if (a.prefix.size() != b.prefix.size()) return false;
  for (std::size_t i = 0; i < a.prefix.size(); ++i) {
    if (a.prefix[i].quantifier != b.prefix[i].quantifier) return false;
  }
  return positional_literals(a) == positional_literals(b);
}

std::vector<std::string> variables_of(const Formula& f, Quantifier q) {
  std::vector<std::string> out;
  for (const auto& entry : f.prefix) {
    if (entry.quantifier == q) out.push_back(entry.variable);
  }
  return out;
}

std::set<std::string> constants_of(const Formula& f) {
  std::set<std::string> out;
  for (const auto& lit : f.body.literals) {
    if (lit.atom.argument && lit.atom.argument->kind == TermKind::kObject) {
      out.insert(lit.atom.argument->name);
    }
  }
  return out;
}

Formula substitute(const Formula& f, const Binding& binding) {
  Formula out;
  out.op = f.op;
  out.body.negated = f.body.negated;
  for (const auto& q : f.prefix) {
    if (!binding.lookup(q.variable)) out.prefix.push_back(q);
  }
  for (auto lit : f.body.literals) {
    if (lit.atom.argument && lit.atom.argument->kind == TermKind::kVariable) {
      if (const std::string* obj = binding.lookup(lit.atom.argument->name)) {
        lit.atom.argument = Term{TermKind::kObject, *obj};
      }
    }
    out.body.literals.push_back(std::move(lit));
  }
  return out;
}

std::vector<GroundInstance> ground(const Formula& f,
                                   std::span<const std::string> objects) {
  if (!f.prefix.empty() && objects.empty()) {
    throw VelError("cannot ground a quantified formula over no objects");
  }
  for (const auto& c : constants_of(f)) {
    if (std::find(objects.begin(), objects.end(), c) == objects.end()) {
      throw VelError("unknown object constant " + c);
    }
  }
  const auto universals = variables_of(f, Quantifier::kForall);
  const auto existentials = variables_of(f, Quantifier::kExists);
  std::vector<GroundInstance> out;
  std::vector<std::size_t> choice(universals.size(), 0);
  for (;;) {
    GroundInstance inst;
    inst.source = f;
    for (std::size_t i = 0; i < universals.size(); ++i) {
      inst.binding.entries.emplace_back(universals[i], objects[choice[i]]);
    }
    inst.existentials = existentials;
    inst.objects.assign(objects.begin(), objects.end());
    out.push_back(std::move(inst));
    // Odometer over the universals, last variable fastest.
    std::size_t i = universals.size();
    while (i > 0) {
      --i;
      if (++choice[i] < objects.size()) break;
      choice[i] = 0;
      if (i == 0) return out;
    }
    if (universals.empty()) return out;
  }
}

namespace {

bool literal_holds(const Literal& lit, const GroundInstance& inst,
                   const std::map<std::string, std::string>& existential,
                   const AtomSet& state) {
  GroundAtom g{lit.atom.predicate, std::nullopt};
  if (const auto& arg = lit.atom.argument) {
    if (arg->kind == TermKind::kObject) {
      g.object = arg->name;
    } else if (const std::string* obj = inst.binding.lookup(arg->name)) {
      g.object = *obj;
    } else {
      auto it = existential.find(arg->name);
      if (it == existential.end()) {
        throw VelError("unbound variable " + arg->name);
      }
      g.object = it->second;
    }
  }
  return state.contains(g) != lit.negated;
}

bool conjunction_holds(const GroundInstance& inst,
                       const std::map<std::string, std::string>& existential,
                       const AtomSet& state) {
  bool all = std::all_of(
      inst.source.body.literals.begin(), inst.source.body.literals.end(),
      [&](const Literal& l) { return literal_holds(l, inst, existential, state); });
  return all != inst.source.body.negated;
}

}  // namespace

bool body_holds(const GroundInstance& inst, const AtomSet& state) {
  std::map<std::string, std::string> existential;
  if (inst.existentials.empty()) {
    return conjunction_holds(inst, existential, state);
  }
  if (inst.objects.empty()) return false;
  std::vector<std::size_t> choice(inst.existentials.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < choice.size(); ++i) {
      existential[inst.existentials[i]] = inst.objects[choice[i]];
    }
    if (conjunction_holds(inst, existential, state)) return true;
    std::size_t i = choice.size();
    while (i > 0) {
      --i;
      if (++choice[i] < inst.objects.size()) break;
      choice[i] = 0;
      if (i == 0) return false;
    }
  }
}

Verdict evaluate(const GroundInstance& inst, std::span<const AtomSet> states) {
  if (states.empty()) throw VelError("cannot evaluate on an empty trace");
  for (const auto& c : constants_of(inst.source)) {
    if (std::find(inst.objects.begin(), inst.objects.end(), c) ==
        inst.objects.end()) {
      throw VelError("unknown object constant " + c);
    }
  }
  if (inst.source.op == TemporalOp::kAlways) {
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (!body_holds(inst, states[i])) {
        return {VerdictStatus::kViolated, i};
      }
    }
    return {VerdictStatus::kSatisfied, std::nullopt};
  }
  for (const auto& s : states) {
    if (body_holds(inst, s)) return {VerdictStatus::kSatisfied, std::nullopt};
  }
  return {VerdictStatus::kViolated, std::nullopt};
}

MonitorStatus advance(MonitorStatus status, TemporalOp op, bool holds) {
  if (status != MonitorStatus::kPending) return status;
  if (op == TemporalOp::kAlways) {
    return holds ? MonitorStatus::kPending : MonitorStatus::kViolatedForever;
  }
  return holds ? MonitorStatus::kSatisfiedForever : MonitorStatus::kPending;
}

VerdictStatus finalize_status(MonitorStatus status, TemporalOp op) {
  switch (status) {
    case MonitorStatus::kSatisfiedForever:
      return VerdictStatus::kSatisfied;
    case MonitorStatus::kViolatedForever:
      return VerdictStatus::kViolated;
    case MonitorStatus::kPending:
      break;
  }
  return op == TemporalOp::kAlways ? VerdictStatus::kSatisfied
                                   : VerdictStatus::kViolated;
}

Monitor compile_monitor(std::shared_ptr<const GroundInstance> inst) {
  if (!inst) throw VelError("monitor needs an instance");
  Monitor m;
  m.instance = std::move(inst);
  return m;
}

Monitor monitor_step(const Monitor& m, const AtomSet& state) {
  Monitor next = m;
  std::size_t index = next.steps++;
  if (m.status != MonitorStatus::kPending) return next;
  next.status = advance(m.status, m.instance->source.op,
                        body_holds(*m.instance, state));
  if (next.status == MonitorStatus::kViolatedForever) next.witness = index;
  return next;
}

Verdict monitor_finalize(const Monitor& m) {
  Verdict v;
  v.status = finalize_status(m.status, m.instance->source.op);
  if (v.violated() && m.instance->source.op == TemporalOp::kAlways) {
    v.witness = m.witness;
  }
  return v;
}

}  // namespace normagent
