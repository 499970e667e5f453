#pragma once

#include <vector>

#include "killword/analysis.hpp"
#include "killword/sc_synthesis.hpp"

namespace killword {

// Per-class synthesis words and their diagonal-block ranks, in class order.
struct BlockPlan {
  SccDecomposition decomposition;
  std::vector<Word> block_words;
  std::vector<std::size_t> block_ranks;
};

// Diagonal-block morphism on the states of one class of scc_decompose(m),
// renumbered in ascending order. Strongly connected by construction and
// inherits the gate (restricted products are dominated entrywise).
MatrixMorphism restrict_block(const MatrixMorphism& m, const StateSet& class_states);

struct SynthesisResult {
  Word word;
  std::size_t rank = 0;
  Int bound;
  BlockPlan plan;
  std::vector<ScSynthesisResult> block_results;  // aligned with plan classes
};

// Minimum-rank word for an arbitrary gate-passed morphism: per-class words
// from the strongly connected case, concatenated in class order. The rank of
// the product equals the sum of the block ranks, which is the minimum rank
// of the whole monoid.
SynthesisResult synthesize(const MatrixMorphism& m);

}  // namespace killword
