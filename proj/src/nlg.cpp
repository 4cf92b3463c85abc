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

#include "normagent/nlg.hpp"

#include <cctype>
#include <map>

namespace normagent {

std::string join_and(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += i + 1 == items.size() ? " and " : ", ";
    out += items[i];
  }
  return out;
}

std::string join_serial(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += i + 1 == items.size() ? ", and " : ", ";
    out += items[i];
  }
  return out;
}

namespace {

enum class Form { kBase, kPast, kParticiple, kGerund };

const std::string& form_of(const VerbEntry& v, Form form) {
  switch (form) {
    case Form::kBase: return v.base;
    case Form::kPast: return v.past;
    case Form::kParticiple: return v.participle;
    case Form::kGerund: return v.gerund;
  }
  return v.base;
}

// Head literal plus an optional relative-clause literal on its noun phrase.
struct Chunk {
  const Literal* head = nullptr;
  const Literal* relative = nullptr;
};

bool same_term(const Literal& a, const Literal& b) {
  return a.atom.argument && b.atom.argument &&
         *a.atom.argument == *b.atom.argument;
}

// Returns the reason `f` cannot be realized, or the chunking.
std::vector<Chunk> chunk(const Formula& f, const Lexicon& lex,
                         std::string* error) {
  auto reject = [&](std::string why) {
    if (error) *error = std::move(why);
    return std::vector<Chunk>{};
  };
  if (f.op == TemporalOp::kAlways && !f.body.negated) {
    return reject("G over a plain conjunction has no realization");
  }
  if (f.op == TemporalOp::kEventually && f.body.negated) {
    return reject("F over a negated conjunction has no realization");
  }
  if (f.prefix.size() > 1) return reject("more than one quantified variable");
  const auto& lits = f.body.literals;
  if (lits.empty()) return reject("empty conjunction");
  if (lits.front().negated) return reject("negated first literal");
  for (const auto& lit : lits) {
    const VerbEntry* v = lex.verb(lit.atom.predicate);
    if (!v) return reject("no lexicon entry for " + lit.atom.predicate);
    if (v->takes_object != lit.atom.argument.has_value()) {
      return reject("lexicon arity mismatch for " + lit.atom.predicate);
    }
    if (lit.atom.argument && lit.atom.argument->kind == TermKind::kObject &&
        !lex.noun_phrase(lit.atom.argument->name)) {
      return reject("no noun phrase for " + lit.atom.argument->name);
    }
  }
  std::vector<Chunk> chunks;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (!chunks.empty() && !chunks.back().relative &&
        same_term(*chunks.back().head, lits[i])) {
      chunks.back().relative = &lits[i];
      continue;
    }
    chunks.push_back({&lits[i], nullptr});
  }
  std::map<std::string, int> heads;
  for (const auto& c : chunks) {
    const auto& arg = c.head->atom.argument;
    if (arg && arg->kind == TermKind::kVariable) ++heads[arg->name];
  }
  for (const auto& [var, count] : heads) {
    if (count > 1) return reject("variable " + var + " needs more than one noun phrase");
  }
  return chunks;
}

std::vector<Chunk> chunk_or_throw(const Formula& f, const Lexicon& lex) {
  std::string error;
  auto chunks = chunk(f, lex, &error);
  if (chunks.empty()) throw NlgError(error + ": " + print_vel(f));
  return chunks;
}

class Realizer {
 public:
  Realizer(const Formula& f, const Lexicon& lex, bool past_perfect)
      : f_(f), lex_(lex), chunks_(chunk_or_throw(f, lex)),
        past_perfect_(past_perfect) {}

  // Verb phrase with the main verb in `form` and later conjuncts as
  // "while <gerund>" adjuncts.
  std::string verb_phrase(Form form) const {
    std::string out = clause(chunks_.front(), form);
    for (std::size_t i = 1; i < chunks_.size(); ++i) {
      out += " while ";
      if (chunks_[i].head->negated) out += "not ";
      out += clause(chunks_[i], Form::kGerund);
    }
    return out;
  }

 private:
  std::string noun_phrase(const Term& t) const {
    if (t.kind == TermKind::kObject) return *lex_.noun_phrase(t.name);
    for (const auto& q : f_.prefix) {
      if (q.variable != t.name) continue;
      if (q.quantifier == Quantifier::kExists) return "something";
      return f_.op == TemporalOp::kEventually ? "everything" : "anything";
    }
    throw NlgError("unbound variable " + t.name);
  }

  std::string clause(const Chunk& c, Form form) const {
    const VerbEntry& v = *lex_.verb(c.head->atom.predicate);
    std::string out = form_of(v, form);
    if (v.takes_object) {
      out += " " + noun_phrase(*c.head->atom.argument);
    } else if (!v.complement.empty()) {
      out += " " + v.complement;
    }
    if (c.relative) {
      const VerbEntry& r = *lex_.verb(c.relative->atom.predicate);
      out += past_perfect_ ? " which I had " : " which I have ";
      if (c.relative->negated) out += "not ";
      out += r.participle;
    }
    return out;
  }

  const Formula& f_;
  const Lexicon& lex_;
  std::vector<Chunk> chunks_;
  bool past_perfect_;
};

bool prohibition(const Formula& f) { return f.op == TemporalOp::kAlways; }

std::string capitalize(std::string s) {
  if (!s.empty()) {
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  }
  return s;
}

bool counterfactual(Mood mood) {
  return mood == Mood::kPastCounterfactual || mood == Mood::kNormHypothetical;
}

}  // namespace

bool realizable(const Formula& f, const Lexicon& lex) {
  return !chunk(f, lex, nullptr).empty();
}

std::string realize_norm(const Formula& f, Mood mood, const Lexicon& lex) {
  Realizer r(f, lex, false);
  const bool neg = prohibition(f);
  switch (mood) {
    case Mood::kNormPresent:
      return (neg ? "I must not " : "I must ") + r.verb_phrase(Form::kBase);
    case Mood::kNormHypothetical:
      return (neg ? "I would have to not " : "I would have to ") +
             r.verb_phrase(Form::kBase);
    case Mood::kPastFactual:
    case Mood::kPastCounterfactual:
    case Mood::kGerund:
      return realize_instance(f, Binding{}, mood, lex);
  }
  return {};
}

std::string realize_norm(const Norm& n, Mood mood, const Lexicon& lex) {
  return realize_norm(n.formula, mood, lex);
}

std::string realize_norm_list(const NormSystem& ns, Mood mood,
                              const Lexicon& lex) {
  if (ns.empty()) {
    return counterfactual(mood) ? "I would not have any rules."
                                : "I do not have any rules.";
  }
  std::vector<std::string> parts;
  for (const auto& n : ns.norms()) parts.push_back(realize_norm(n, mood, lex));
  return join_serial(parts) + ".";
}

std::string realize_trace(const Trace& t, Mood mood, const Lexicon& lex) {
  const bool cf = counterfactual(mood);
  if (t.actions.empty()) {
    return cf ? "I would have done nothing." : "I did nothing.";
  }
  std::vector<std::string> parts;
  for (const auto& a : t.actions) {
    const VerbEntry* v = lex.verb(a.schema);
    if (!v) throw NlgError("no lexicon entry for action " + a.schema);
    std::string part = cf ? v->participle : v->past;
    if (a.argument) {
      const std::string* np = lex.noun_phrase(*a.argument);
      if (!np) throw NlgError("no noun phrase for " + *a.argument);
      part += " " + *np;
    } else if (!v->complement.empty()) {
      part += " " + v->complement;
    }
    parts.push_back(std::move(part));
  }
  return (cf ? "I would have " : "I ") + join_and(parts) + ".";
}

std::string realize_instance(const Formula& f, const Binding& binding,
                             Mood mood, const Lexicon& lex) {
  const Formula g = substitute(f, binding);
  const bool neg = prohibition(g);
  switch (mood) {
    case Mood::kPastFactual: {
      Realizer r(g, lex, false);
      return neg ? "I " + r.verb_phrase(Form::kPast)
                 : "I did not " + r.verb_phrase(Form::kBase);
    }
    case Mood::kPastCounterfactual: {
      Realizer r(g, lex, true);
      return (neg ? "I would have " : "I would not have ") +
             r.verb_phrase(Form::kParticiple);
    }
    case Mood::kGerund: {
      Realizer r(g, lex, false);
      return (neg ? "" : "not ") + r.verb_phrase(Form::kGerund);
    }
    case Mood::kNormPresent:
    case Mood::kNormHypothetical:
      return realize_norm(g, mood, lex);
  }
  return {};
}

std::string realize_violations(const ViolationReport& r, Mood mood,
                               const Lexicon& lex) {
  const bool cf = counterfactual(mood);
  const Mood instance_mood = cf ? Mood::kPastCounterfactual : Mood::kPastFactual;
  std::vector<std::string> parts;
  for (const auto& entry : r.entries) {
    for (const auto& [binding, verdict] : entry.violated) {
      parts.push_back(
          realize_instance(entry.norm.formula, binding, instance_mood, lex));
    }
  }
  if (parts.empty()) {
    return cf ? "I would not have broken any rules."
              : "I did not break any rules.";
  }
  return join_serial(parts) + ".";
}

std::string realize_comparison(const NormInstance& worse,
                               const std::optional<NormInstance>& better,
                               const Lexicon& lex) {
  std::string out = capitalize(
      realize_instance(worse.norm.formula, worse.binding, Mood::kGerund, lex));
  if (!better) return out + " is worse than what I did.";
  return out + " is worse than " +
         realize_instance(better->norm.formula, better->binding,
                          Mood::kGerund, lex) +
         ".";
}

namespace {

// "left the store ..." for F premises, "not left the store ..." for G ones.
std::string premise_participle(const Formula& premise, const Lexicon& lex) {
  Realizer r(premise, lex, true);
  return (prohibition(premise) ? "not " : "") +
         r.verb_phrase(Form::kParticiple);
}

}  // namespace

std::string realize_why_answer(const Formula& premise, WhyOutcome outcome,
                               const Lexicon& lex) {
  if (outcome == WhyOutcome::kImpossible) {
    return "I could not have " + premise_participle(premise, lex) + ".";
  }
  return "I could have " + premise_participle(premise, lex) +
         " but that would have broken more important rules.";
}

std::string realize_already_done(const Formula& premise, const Lexicon& lex) {
  Realizer r(premise, lex, false);
  return (prohibition(premise) ? "But I did not " : "But I did ") +
         r.verb_phrase(Form::kBase) + ".";
}

}  // namespace normagent
