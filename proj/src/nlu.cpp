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

#include "normagent/nlu.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace normagent {

const char* to_string(IntentKind kind) {
  switch (kind) {
    case IntentKind::kAddNorm: return "AddNorm";
    case IntentKind::kRemoveNorm: return "RemoveNorm";
    case IntentKind::kSupposeAdd: return "SupposeAdd";
    case IntentKind::kSupposeRemove: return "SupposeRemove";
    case IntentKind::kMakeItSo: return "MakeItSo";
    case IntentKind::kQueryNorms: return "QueryNorms";
    case IntentKind::kQueryBehavior: return "QueryBehavior";
    case IntentKind::kQueryViolations: return "QueryViolations";
    case IntentKind::kWhyNot: return "WhyNot";
    case IntentKind::kHowDone: return "HowDone";
    case IntentKind::kHowWorse: return "HowWorse";
    case IntentKind::kUnknown: return "Unknown";
  }
  return "Unknown";
}

std::vector<std::string> tokenize(std::string_view text) {
  std::string norm;
  norm.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2019 RIGHT SINGLE QUOTATION MARK
    if (text.compare(i, 3, "\xE2\x80\x99") == 0) {
      norm += '\'';
      i += 2;
      continue;
    }
    norm += static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
  }
  std::vector<std::string> out;
  std::istringstream in(norm);
  std::string word;
  while (in >> word) {
    auto keep = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '\'';
    };
    std::size_t b = 0;
    std::size_t e = word.size();
    while (b < e && !keep(word[b])) ++b;
    while (e > b && !keep(word[e - 1])) --e;
    while (e > b && word[e - 1] == '\'') --e;
    while (b < e && word[b] == '\'') ++b;
    if (b < e) out.push_back(word.substr(b, e - b));
  }
  return out;
}

namespace {

std::vector<std::string> words(std::string_view phrase) {
  std::vector<std::string> out;
  std::istringstream in{std::string(phrase)};
  std::string w;
  while (in >> w) {
    std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) {
      return static_cast<char>(std::tolower(c));
    });
    out.push_back(w);
  }
  return out;
}

class VpParser {
 public:
  VpParser(std::span<const std::string> tokens, const Lexicon& lex)
      : tokens_(tokens), lex_(lex) {}

  Formula parse(Polarity polarity) {
    Formula f;
    f.op = polarity == Polarity::kPositive ? TemporalOp::kEventually
                                           : TemporalOp::kAlways;
    f.body.negated = polarity == Polarity::kNegative;
    head(Form::kBase, false, f);
    while (!done()) {
      if (!accept({"while"})) {
        throw NluError("unexpected '" + tokens_[pos_] + "'");
      }
      bool negated = accept({"not"});
      head(Form::kGerund, negated, f);
    }
    if (quantifier_) f.prefix.push_back({*quantifier_, "x"});
    validate(f);
    return f;
  }

 private:
  enum class Form { kBase, kGerund, kParticiple };

  static const std::string& form_of(const VerbEntry& v, Form form) {
    switch (form) {
      case Form::kBase: return v.base;
      case Form::kGerund: return v.gerund;
      case Form::kParticiple: return v.participle;
    }
    return v.base;
  }

  bool done() const { return pos_ >= tokens_.size(); }

  bool matches(const std::vector<std::string>& phrase) const {
    if (phrase.empty() || pos_ + phrase.size() > tokens_.size()) return false;
    return std::equal(phrase.begin(), phrase.end(), tokens_.begin() + pos_);
  }

  bool accept(const std::vector<std::string>& phrase) {
    if (!matches(phrase)) return false;
    pos_ += phrase.size();
    return true;
  }

  // Longest-matching fluent verb in the given form.
  std::string verb(Form form, bool unary_only) {
    std::string best;
    std::size_t best_len = 0;
    for (const auto& [name, entry] : lex_.verbs) {
      if (!lex_.is_predicate(name)) continue;
      if (unary_only && !entry.takes_object) continue;
      auto phrase = words(form_of(entry, form));
      if (phrase.size() > best_len && matches(phrase)) {
        best = name;
        best_len = phrase.size();
      }
    }
    if (best.empty()) {
      throw NluError(done() ? "missing verb"
                            : "unknown verb at '" + tokens_[pos_] + "'");
    }
    pos_ += best_len;
    return best;
  }

  Term noun_phrase() {
    if (!done()) {
      auto q = lex_.quantifier_words.find(tokens_[pos_]);
      if (q != lex_.quantifier_words.end()) {
        if (quantifier_) {
          throw NluError("more than one quantifier word is not supported");
        }
        quantifier_ = q->second;
        ++pos_;
        return Term{TermKind::kVariable, "x"};
      }
    }
    std::string best;
    std::size_t best_len = 0;
    for (const auto& [object, np] : lex_.objects) {
      auto phrase = words(np);
      if (phrase.size() > best_len && matches(phrase)) {
        best = object;
        best_len = phrase.size();
      }
    }
    if (best.empty()) {
      throw NluError(done() ? "missing noun phrase"
                            : "unknown noun phrase at '" + tokens_[pos_] + "'");
    }
    pos_ += best_len;
    return Term{TermKind::kObject, best};
  }

  void head(Form form, bool negated, Formula& f) {
    std::string name = verb(form, false);
    const VerbEntry& entry = lex_.verbs.at(name);
    Literal lit{Atom{name, std::nullopt}, negated};
    if (entry.takes_object) {
      lit.atom.argument = noun_phrase();
    } else if (!entry.complement.empty() && !accept(words(entry.complement))) {
      throw NluError("expected '" + entry.complement + "'");
    }
    f.body.literals.push_back(lit);
    if (!entry.takes_object || !accept({"which", "i"})) return;
    if (!accept({"have"}) && !accept({"had"})) {
      throw NluError("expected 'have' or 'had' in relative clause");
    }
    bool rel_negated = accept({"not"});
    std::string rel = verb(Form::kParticiple, true);
    f.body.literals.push_back(
        Literal{Atom{rel, lit.atom.argument}, rel_negated});
  }

  std::span<const std::string> tokens_;
  const Lexicon& lex_;
  std::size_t pos_ = 0;
  std::optional<Quantifier> quantifier_;
};

}  // namespace

Formula parse_vp(std::span<const std::string> tokens, const Lexicon& lex,
                 Polarity polarity) {
  if (tokens.empty()) throw NluError("empty verb phrase");
  VpParser p(tokens, lex);
  return p.parse(polarity);
}

namespace {

struct Frame {
  std::vector<std::string> prefix;
  IntentKind kind;
  Polarity polarity;
};

// Longer prefixes first so that "you must not" wins over "you must".
const std::vector<Frame>& norm_frames() {
  static const std::vector<Frame> frames = [] {
    std::vector<Frame> f = {
        {words("you must not"), IntentKind::kAddNorm, Polarity::kNegative},
        {words("you mustn't"), IntentKind::kAddNorm, Polarity::kNegative},
        {words("you should not"), IntentKind::kAddNorm, Polarity::kNegative},
        {words("you shouldn't"), IntentKind::kAddNorm, Polarity::kNegative},
        {words("you have to not"), IntentKind::kAddNorm, Polarity::kNegative},
        {words("you can't"), IntentKind::kAddNorm, Polarity::kNegative},
        {words("you cannot"), IntentKind::kAddNorm, Polarity::kNegative},
        {words("you must"), IntentKind::kAddNorm, Polarity::kPositive},
        {words("you should"), IntentKind::kAddNorm, Polarity::kPositive},
        {words("you have to"), IntentKind::kAddNorm, Polarity::kPositive},
        {words("you don't have to"), IntentKind::kRemoveNorm,
         Polarity::kPositive},
        {words("you do not have to"), IntentKind::kRemoveNorm,
         Polarity::kPositive},
        {words("you can not"), IntentKind::kRemoveNorm, Polarity::kPositive},
        {words("you may"), IntentKind::kRemoveNorm, Polarity::kNegative},
        {words("you can"), IntentKind::kRemoveNorm, Polarity::kNegative},
    };
    std::stable_sort(f.begin(), f.end(), [](const Frame& a, const Frame& b) {
      return a.prefix.size() > b.prefix.size();
    });
    return f;
  }();
  return frames;
}

const std::vector<Frame>& suppose_frames() {
  static const std::vector<Frame> frames = [] {
    std::vector<Frame> f = {
        {words("you didn't have to"), IntentKind::kSupposeRemove,
         Polarity::kPositive},
        {words("you did not have to"), IntentKind::kSupposeRemove,
         Polarity::kPositive},
        {words("you couldn't"), IntentKind::kSupposeAdd, Polarity::kNegative},
        {words("you could not"), IntentKind::kSupposeAdd, Polarity::kNegative},
        {words("you could"), IntentKind::kSupposeRemove, Polarity::kNegative},
        {words("you had to not"), IntentKind::kSupposeAdd,
         Polarity::kNegative},
        {words("you had to"), IntentKind::kSupposeAdd, Polarity::kPositive},
    };
    std::stable_sort(f.begin(), f.end(), [](const Frame& a, const Frame& b) {
      return a.prefix.size() > b.prefix.size();
    });
    return f;
  }();
  return frames;
}

struct Query {
  std::vector<std::string> words;
  IntentKind kind;
  QueryMood mood;
};

const std::vector<Query>& queries() {
  static const std::vector<Query> q = {
      {words("what rules do you follow"), IntentKind::kQueryNorms,
       QueryMood::kActual},
      {words("what rules would you follow"), IntentKind::kQueryNorms,
       QueryMood::kAlternative},
      {words("what rules did you break"), IntentKind::kQueryViolations,
       QueryMood::kActual},
      {words("what rules would you have broken"),
       IntentKind::kQueryViolations, QueryMood::kAlternative},
      {words("what did you do"), IntentKind::kQueryBehavior,
       QueryMood::kActual},
      {words("what would you have done"), IntentKind::kQueryBehavior,
       QueryMood::kAlternative},
      {words("how would you have done that"), IntentKind::kHowDone,
       QueryMood::kAlternative},
      {words("how would that have been worse"), IntentKind::kHowWorse,
       QueryMood::kAlternative},
      {words("make it so"), IntentKind::kMakeItSo, QueryMood::kActual},
  };
  return q;
}

bool starts_with(std::span<const std::string> tokens,
                 const std::vector<std::string>& prefix) {
  return tokens.size() >= prefix.size() &&
         std::equal(prefix.begin(), prefix.end(), tokens.begin());
}

Intent unknown(std::string diagnostic) {
  Intent i;
  i.kind = IntentKind::kUnknown;
  i.diagnostic = std::move(diagnostic);
  return i;
}

Intent with_vp(IntentKind kind, std::span<const std::string> vp,
               const Lexicon& lex, Polarity polarity) {
  try {
    Intent i;
    i.kind = kind;
    i.payload = parse_vp(vp, lex, polarity);
    return i;
  } catch (const std::exception& e) {
    return unknown(std::string(to_string(kind)) + " frame: " + e.what());
  }
}

std::optional<Intent> match_frames(std::span<const std::string> tokens,
                                   const std::vector<Frame>& frames,
                                   const Lexicon& lex) {
  for (const auto& frame : frames) {
    if (!starts_with(tokens, frame.prefix)) continue;
    return with_vp(frame.kind, tokens.subspan(frame.prefix.size()), lex,
                   frame.polarity);
  }
  return std::nullopt;
}

}  // namespace

Intent parse_utterance(std::string_view text, const Lexicon& lex) {
  const std::vector<std::string> all = tokenize(text);
  std::span<const std::string> tokens(all);
  if (tokens.empty()) return unknown("empty utterance");

  for (const auto& q : queries()) {
    if (tokens.size() == q.words.size() && starts_with(tokens, q.words)) {
      Intent i;
      i.kind = q.kind;
      i.mood = q.mood;
      return i;
    }
  }

  for (const auto& lead : {words("why did you not"), words("why didn't you")}) {
    if (starts_with(tokens, lead)) {
      return with_vp(IntentKind::kWhyNot, tokens.subspan(lead.size()), lex,
                     Polarity::kPositive);
    }
  }
  if (starts_with(tokens, words("why did you"))) {
    return with_vp(IntentKind::kWhyNot, tokens.subspan(3), lex,
                   Polarity::kNegative);
  }

  for (const auto& lead : {words("let's say"), words("lets say"),
                           words("suppose")}) {
    if (!starts_with(tokens, lead)) continue;
    auto rest = tokens.subspan(lead.size());
    if (!rest.empty() && rest.front() == "that") rest = rest.subspan(1);
    if (auto i = match_frames(rest, suppose_frames(), lex)) return *i;
    return unknown("unrecognized supposition");
  }

  if (auto i = match_frames(tokens, norm_frames(), lex)) return *i;
  return unknown("no frame matches");
}

}  // namespace normagent
