#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "killword/analysis.hpp"
#include "killword/core.hpp"

namespace killword {

// Product of the words z and y of the two exclusion loops, together with the
// states q_1..q_k that are reached by y and survive z. Built for strongly
// connected, gate-passed morphisms.
struct ScContext {
  MatrixMorphism morphism;
  Word z;  // no two coreachable states both survive z
  Word y;  // no two mergeable states are both reached by y
  std::vector<std::size_t> survivors;  // ascending
  std::size_t c_realized = 1;  // max |q.w| observed while building z
  std::size_t m_realized = 1;  // max |w.q| observed while building y
  std::size_t init_length = 0;  // seed length the loops were run with
  Relation relation_z;
  Relation relation_y;
};

struct ContextOptions {
  // Seed length for the z/y loops and the per-state extender loops. Zero is
  // the general strongly-connected algorithm; the codes pipeline passes
  // k-1 to exploit the flower structure, which tightens every bound.
  std::size_t init_length = 0;
};

// Word after which no state coreachable with q survives; empty when C(q) is
// empty. Length at most (c-1)(n+2)(n-1)/2.
Word extender_word(const MatrixMorphism& m, std::size_t q);

ScContext build_context(const MatrixMorphism& m, const ContextOptions& opts = {});

// Word x_i with |x_i| <= n such that (q_i z) x_i y z is empty, for the i-th
// survivor (0-based). Requires a mortal morphism. The search grows a basis of
// the row space spanned by (e M(x) | 1) and picks a basis word orthogonal to
// the survivor profile.
Word separator_word(const ScContext& ctx, std::size_t i);

struct ScSynthesisResult {
  Word word;
  std::size_t rank = 0;
  Int bound;  // closed-form length bound the word was checked against
  ScContext context;
  // Separator words in the order the killing loop consumed them.
  std::vector<std::pair<std::size_t, Word>> separators;
};

// floor(n^5/16 + 15 n^4/16), the length bound words are synthesized under.
Int killing_bound(std::size_t n);

// Killing word for a strongly connected, gate-passed, mortal morphism:
// starts from y z and appends x_i y z until the image of Q is empty.
ScSynthesisResult killing_word(const MatrixMorphism& m);

// Minimum-rank word y z for a strongly connected, gate-passed, immortal
// morphism; its rank equals the number of survivors.
ScSynthesisResult min_rank_word(const MatrixMorphism& m);

// Variants running on a prebuilt context (the codes pipeline builds the
// context with seeded loops and a tighter bound).
ScSynthesisResult killing_from(const ScContext& ctx, const Int& bound);
ScSynthesisResult min_rank_from(const ScContext& ctx, const Int& bound);

}  // namespace killword
