#include "killword/general_synthesis.hpp"

#include <algorithm>
#include <stdexcept>

namespace killword {

namespace {

MatrixMorphism block_morphism(const MatrixMorphism& m, const std::vector<std::size_t>& states) {
  std::vector<IntMatrix> gens;
  gens.reserve(m.letters());
  for (Letter a = 0; a < m.letters(); ++a) {
    const IntMatrix& g = m.generator(a);
    IntMatrix sub(states.size(), states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
      for (std::size_t j = 0; j < states.size(); ++j) sub(i, j) = g(states[i], states[j]);
    gens.push_back(std::move(sub));
  }
  return MatrixMorphism(m.alphabet(), states.size(), std::move(gens));
}

}  // namespace

MatrixMorphism restrict_block(const MatrixMorphism& m, const StateSet& class_states) {
  if (class_states.dim() != m.dim()) throw input_error("class states dimension mismatch");
  auto states = class_states.elements();
  SccDecomposition scc = scc_decompose(m);
  bool found = std::any_of(scc.classes.begin(), scc.classes.end(),
                           [&](const std::vector<std::size_t>& cls) { return cls == states; });
  if (!found) throw input_error("state set is not a class of the decomposition");
  return block_morphism(m, states);
}

SynthesisResult synthesize(const MatrixMorphism& m) {
  require_jsr_le_one(m);

  SynthesisResult result;
  result.plan.decomposition = scc_decompose(m);
  result.rank = 0;

  for (const auto& cls : result.plan.decomposition.classes) {
    MatrixMorphism block = block_morphism(m, cls);
    ScSynthesisResult sub =
        mortality(block) ? killing_word(block) : min_rank_word(block);
    result.rank += sub.rank;
    result.plan.block_words.push_back(sub.word);
    result.plan.block_ranks.push_back(sub.rank);
    append(result.word, sub.word);
    result.block_results.push_back(std::move(sub));
  }

  result.bound = killing_bound(m.dim());
  Int per_block_total = 0;
  for (const auto& cls : result.plan.decomposition.classes)
    per_block_total += killing_bound(cls.size());
  if (Int(static_cast<unsigned long long>(result.word.size())) > per_block_total ||
      per_block_total > result.bound)
    throw std::logic_error("synthesized word exceeds the length bound");

  if (rank(evaluate(m, result.word)) != result.rank)
    throw std::logic_error("synthesized word has unexpected rank");
  return result;
}

}  // namespace killword
