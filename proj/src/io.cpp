#include "killword/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

namespace killword::io {

namespace {

Alphabet parse_alphabet(const json& doc) {
  if (!doc.contains("alphabet") || !doc["alphabet"].is_array())
    throw input_error("document needs an \"alphabet\" array");
  std::vector<std::string> symbols;
  for (const auto& s : doc["alphabet"]) {
    if (!s.is_string()) throw input_error("alphabet symbols must be strings");
    symbols.push_back(s.get<std::string>());
  }
  return Alphabet(std::move(symbols));
}

std::size_t parse_count(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 1)
    throw input_error(std::string("document needs a positive integer \"") + key + "\"");
  long long value = doc[key].get<long long>();
  if (value > 4096)
    throw input_error(std::string("\"") + key + "\" exceeds the supported maximum of 4096");
  return static_cast<std::size_t>(value);
}

MatrixMorphism parse_matrices(const json& doc) {
  Alphabet alphabet = parse_alphabet(doc);
  std::size_t n = parse_count(doc, "n");
  if (!doc.contains("generators") || !doc["generators"].is_object())
    throw input_error("matrices document needs a \"generators\" object");
  const json& gens = doc["generators"];
  for (const auto& [key, _] : gens.items())
    if (!alphabet.index_of(key))
      throw input_error("generator for unknown symbol: " + key);

  std::vector<IntMatrix> matrices;
  for (const std::string& sym : alphabet.symbols()) {
    if (!gens.contains(sym)) throw input_error("missing generator for symbol: " + sym);
    const json& rows = gens[sym];
    if (!rows.is_array() || rows.size() != n)
      throw input_error("generator of " + sym + " must have " + std::to_string(n) + " rows");
    IntMatrix mat(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const json& row = rows[i];
      if (!row.is_array() || row.size() != n)
        throw input_error("generator of " + sym + " has a malformed row");
      for (std::size_t j = 0; j < n; ++j) {
        if (!row[j].is_number_integer() || row[j].get<long long>() < 0)
          throw input_error("generator entries must be nonnegative integers");
        mat(i, j) = Int(row[j].get<long long>());
      }
    }
    matrices.push_back(std::move(mat));
  }
  return MatrixMorphism(std::move(alphabet), n, std::move(matrices));
}

MatrixMorphism parse_nfa(const json& doc) {
  Alphabet alphabet = parse_alphabet(doc);
  std::size_t n = parse_count(doc, "states");
  if (!doc.contains("delta") || !doc["delta"].is_object())
    throw input_error("nfa document needs a \"delta\" object");
  const json& delta = doc["delta"];
  for (const auto& [key, _] : delta.items())
    if (!alphabet.index_of(key)) throw input_error("delta for unknown symbol: " + key);

  std::vector<IntMatrix> matrices(alphabet.size(), IntMatrix(n, n));
  for (std::size_t a = 0; a < alphabet.size(); ++a) {
    const std::string& sym = alphabet.symbol(a);
    if (!delta.contains(sym)) continue;  // letter without transitions
    for (const auto& pair : delta[sym]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
          !pair[1].is_number_integer())
        throw input_error("delta entries must be [from, to] pairs");
      long long from = pair[0].get<long long>(), to = pair[1].get<long long>();
      if (from < 0 || to < 0 || from >= static_cast<long long>(n) ||
          to >= static_cast<long long>(n))
        throw input_error("delta state out of range");
      matrices[a](static_cast<std::size_t>(from), static_cast<std::size_t>(to)) = 1;
    }
  }
  return MatrixMorphism(std::move(alphabet), n, std::move(matrices));
}

Code parse_code(const json& doc) {
  Alphabet alphabet = parse_alphabet(doc);
  if (!doc.contains("words") || !doc["words"].is_array())
    throw input_error("code document needs a \"words\" array");
  std::vector<Word> words;
  for (const auto& value : doc["words"]) words.push_back(word_from_json(alphabet, value));
  return Code(std::move(alphabet), std::move(words));
}

long long small_entry(const Int& v, const char* what) {
  if (v > Int(std::numeric_limits<long long>::max()))
    throw input_error(std::string(what) + " too large to serialize");
  return v.convert_to<long long>();
}

}  // namespace

Instance parse_instance(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    throw input_error("instance document needs a \"kind\" string");
  std::string kind = doc["kind"].get<std::string>();
  Instance inst;
  inst.kind = kind;
  if (kind == "matrices")
    inst.morphism = parse_matrices(doc);
  else if (kind == "nfa")
    inst.morphism = parse_nfa(doc);
  else if (kind == "code")
    inst.code = parse_code(doc);
  else
    throw input_error("unknown document kind: " + kind);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw input_error(std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(doc);
}

json matrices_document(const MatrixMorphism& m) {
  json gens = json::object();
  for (Letter a = 0; a < m.letters(); ++a) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.dim(); ++j)
        row.push_back(small_entry(m.generator(a)(i, j), "generator entry"));
      rows.push_back(std::move(row));
    }
    gens[m.alphabet().symbol(a)] = std::move(rows);
  }
  return json{{"kind", "matrices"},
              {"alphabet", m.alphabet().symbols()},
              {"n", m.dim()},
              {"generators", std::move(gens)}};
}

json nfa_document(const MatrixMorphism& m) {
  json delta = json::object();
  for (Letter a = 0; a < m.letters(); ++a) {
    json pairs = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j) {
        const Int& v = m.generator(a)(i, j);
        if (v == 0) continue;
        if (v != 1) throw input_error("nfa documents require {0,1} generators");
        pairs.push_back(json::array({i, j}));
      }
    delta[m.alphabet().symbol(a)] = std::move(pairs);
  }
  return json{{"kind", "nfa"},
              {"alphabet", m.alphabet().symbols()},
              {"states", m.dim()},
              {"delta", std::move(delta)}};
}

json code_document(const Code& code) {
  bool single_char =
      std::all_of(code.alphabet().symbols().begin(), code.alphabet().symbols().end(),
                  [](const std::string& s) { return s.size() == 1; });
  json words = json::array();
  for (const Word& w : code.words()) {
    if (single_char)
      words.push_back(format_word(code.alphabet(), w));
    else
      words.push_back(word_json(code.alphabet(), w));
  }
  return json{{"kind", "code"},
              {"alphabet", code.alphabet().symbols()},
              {"words", std::move(words)}};
}

json word_json(const Alphabet& alphabet, const Word& w) {
  json out = json::array();
  for (Letter a : w) out.push_back(alphabet.symbol(a));
  return out;
}

Word word_from_json(const Alphabet& alphabet, const json& value) {
  Word w;
  if (value.is_string()) {
    for (char c : value.get<std::string>()) {
      auto idx = alphabet.index_of(std::string(1, c));
      if (!idx)
        throw input_error(std::string("word character is not an alphabet symbol: ") + c);
      w.push_back(*idx);
    }
  } else if (value.is_array()) {
    for (const auto& sym : value) {
      if (!sym.is_string()) throw input_error("word entries must be symbol strings");
      auto idx = alphabet.index_of(sym.get<std::string>());
      if (!idx) throw input_error("word symbol is not in the alphabet: " + sym.get<std::string>());
      w.push_back(*idx);
    }
  } else {
    throw input_error("words must be strings or arrays of symbols");
  }
  return w;
}

}  // namespace killword::io
