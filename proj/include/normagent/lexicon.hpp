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

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "normagent/vel.hpp"

namespace normagent {

// English realization of one predicate or action. Verb forms may span
// several words ("pick up"). An entry either takes an object noun phrase or
// carries a fixed complement ("the store"), possibly empty.
struct VerbEntry {
  std::string base;
  std::string past;
  std::string participle;
  std::string gerund;
  bool takes_object = false;
  std::string complement;

  bool operator==(const VerbEntry&) const = default;
};

struct Lexicon {
  // Keyed by predicate or action name; a fluent and an action of the same
  // name share one entry.
  std::map<std::string, VerbEntry> verbs;
  // Entries naming fluents, the only ones usable in norms. Empty means
  // every entry is a fluent.
  std::set<std::string> predicates;
  // Object constant -> noun phrase.
  std::map<std::string, std::string> objects;
  // Quantifier words; "everything" and "anything" read universally.
  std::map<std::string, Quantifier> quantifier_words = {
      {"everything", Quantifier::kForall},
      {"anything", Quantifier::kForall},
      {"something", Quantifier::kExists},
  };

  const VerbEntry* verb(const std::string& name) const {
    auto it = verbs.find(name);
    return it == verbs.end() ? nullptr : &it->second;
  }

  bool is_predicate(const std::string& name) const {
    return predicates.empty() || predicates.contains(name);
  }

  const std::string* noun_phrase(const std::string& object) const {
    auto it = objects.find(object);
    return it == objects.end() ? nullptr : &it->second;
  }
};

}  // namespace normagent
