#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "killword/core.hpp"
#include "killword/sc_synthesis.hpp"

namespace killword {

// Finite set of distinct nonempty words.
class Code {
 public:
  Code(Alphabet alphabet, std::vector<Word> words);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& words() const { return words_; }
  std::size_t k() const { return k_; }  // longest word
  std::size_t m() const { return m_; }  // total length

 private:
  Alphabet alphabet_;
  std::vector<Word> words_;
  std::size_t k_ = 0;
  std::size_t m_ = 0;
};

struct CodeCheck {
  bool is_code = false;
  std::optional<Word> ambiguous_word;
  // Two distinct factorizations of the ambiguous word, as code-word indices.
  std::vector<std::vector<std::size_t>> factorizations;
};

// Decides unique factorization with the suffix-set iteration, and
// independently hunts a shortest doubly-factorizable word over the prefix
// automaton; the two verdicts are required to agree.
CodeCheck sardinas_patterson(const Code& code);

struct code_error : precondition_error {
  explicit code_error(Word w)
      : precondition_error("word set is not a code"), witness(std::move(w)) {}
  Word witness;
};

// One petal cycle through the central state per code word; no code gate, so
// the ambiguity of non-codes can be observed on the result.
MatrixMorphism petal_morphism(const Code& code);

struct FlowerAutomaton {
  MatrixMorphism morphism;  // {0,1} entries
  std::size_t central = 0;
  // state -> (word index, offset); empty for the central state.
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> petal_map;
  // u_q with q . u_q = {central} and |u_q| <= k-1 (petal completion).
  std::vector<Word> return_words;
};

// Gated construction: throws code_error (with the double-factorization
// witness) for non-codes; the result is verified unambiguous.
FlowerAutomaton flower(const Code& code);

// Whether v is a factor of no word of X*: exactly when v labels no path in
// the flower automaton, i.e. evaluates to the zero matrix.
bool is_uncompletable(const Code& code, const Word& v);
bool is_uncompletable(const FlowerAutomaton& fl, const Word& v);

// (k+1) k^2 (size+2) (size+1).
Int restivo_bound(std::size_t k, std::size_t size);

struct UncompletableResult {
  // No uncompletable word exists (every word is completable); decided by the
  // mortality test on the flower, not by bounded search.
  bool complete = false;
  std::optional<Word> word;
  Int bound;  // (k+1) k^2 (m+2) (m+1)
  FlowerAutomaton flower;
  std::optional<ScSynthesisResult> synthesis;
};

// Synthesizes an uncompletable word of length at most (k+1) k^2 (m+2) (m+1)
// through the killing-word machinery seeded with length-(k-1) words, or
// reports completeness.
UncompletableResult uncompletable_word(const Code& code);

}  // namespace killword
