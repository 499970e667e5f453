#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "killword/codes.hpp"
#include "killword/core.hpp"

namespace killword::io {

using json = nlohmann::json;

// One parsed instance document: "matrices" and "nfa" carry a morphism
// ("nfa" is sugar for a {0,1} matrices document), "code" carries a word set.
struct Instance {
  std::string kind;
  std::optional<MatrixMorphism> morphism;
  std::optional<Code> code;
};

Instance parse_instance(const json& doc);
Instance load_instance(const std::string& path);

json matrices_document(const MatrixMorphism& m);
json nfa_document(const MatrixMorphism& m);  // requires {0,1} generators
json code_document(const Code& code);

// Words travel as arrays of symbol names; concatenated strings would be
// ambiguous for multi-character symbols.
json word_json(const Alphabet& alphabet, const Word& w);
Word word_from_json(const Alphabet& alphabet, const json& value);

}  // namespace killword::io
