#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "killword/core.hpp"

namespace killword {

// Equivalence classes of mutual reachability in the one-letter support graph,
// topologically sorted: i in classes[k], j in classes[l], i -> j implies k <= l.
struct SccDecomposition {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;
};

SccDecomposition scc_decompose(const MatrixMorphism& m);

bool is_strongly_connected(const MatrixMorphism& m);

// Reachability closure of the support graph, reflexive (the empty word gives
// i -> i). Row q holds every state reachable from q.
std::vector<StateSet> reachability_closure(const MatrixMorphism& m);

// Shortest word labeling a support path from -> to (empty word when equal),
// or nothing if unreachable. Edge labels pick the smallest letter.
std::optional<Word> support_path_word(const MatrixMorphism& m, std::size_t from, std::size_t to);

struct JsrVerdict {
  bool ok = false;
  struct Witness {
    std::size_t state = 0;
    Word word;  // evaluate(m, word)(state, state) >= 2
  };
  std::optional<Witness> witness;
};

// Decides whether any product has a diagonal entry >= 2. For nonnegative
// integer matrices this is the exponential-growth pattern: a failed check
// comes with a state q and word v such that M(v^k)(q,q) >= 2^k.
JsrVerdict check_jsr_le_one(const MatrixMorphism& m);

struct jsr_gate_error : precondition_error {
  explicit jsr_gate_error(JsrVerdict v)
      : precondition_error("joint spectral radius gate failed: a product has a diagonal entry >= 2"),
        verdict(std::move(v)) {}
  JsrVerdict verdict;
};

void require_jsr_le_one(const MatrixMorphism& m);

// Whether the zero matrix is a product of generators, decided through the
// average matrix A = (1/|Sigma|) sum_a M(a): mortal iff Ax = x has no nonzero
// solution. Requires the gate; throws jsr_gate_error otherwise.
bool mortality(const MatrixMorphism& m);

// BFS trees over the pair graph whose vertices are the unordered pairs {r,s}
// (singletons included) and whose edges (R,a,S) exist whenever R.a contains S.
// Shared by the synthesis loops so each root is explored once.
class PairGraph {
 public:
  explicit PairGraph(const MatrixMorphism& m);

  // Shortest word w with root.w containing {r,s}, or nothing.
  std::optional<Word> witness_from(std::size_t root, std::size_t r, std::size_t s);

  // All states coreachable with q (multi-source closure from all singletons).
  const StateSet& pairs_of(std::size_t q);

 private:
  struct Tree {
    std::vector<int> dist;
    std::vector<std::size_t> parent;
    std::vector<Letter> via;
  };
  std::size_t vertex(std::size_t r, std::size_t s) const;
  const Tree& tree_for(std::size_t root);
  void compute_pair_closure();

  std::size_t dim_;
  std::vector<Relation> supports_;
  std::vector<std::optional<Tree>> trees_;
  std::vector<StateSet> pair_closure_;
  bool closure_done_ = false;
};

// States q2 != q such that some state reaches both q and q2 under one word.
// Requires a strongly connected morphism.
StateSet coreachable_set(const MatrixMorphism& m, std::size_t q);

// Word w with forward-image({q}, w) containing {q, q2}, of length at most
// (n+2)(n-1)/2, or nothing when q, q2 are not coreachable. Requires a
// strongly connected morphism and q != q2.
std::optional<Word> coreachability_witness(const MatrixMorphism& m, std::size_t q,
                                           std::size_t q2);

// Dual notions, computed on the transposed morphism with words reversed.
StateSet mergeable_set(const MatrixMorphism& m, std::size_t q);
std::optional<Word> mergeability_witness(const MatrixMorphism& m, std::size_t q, std::size_t q2);

// Symmetric pair matrices over all states, definitional (no connectivity
// requirement): row q of coreachable_pairs(m) is { q' : q, q' coreachable }.
std::vector<StateSet> coreachable_pairs(const MatrixMorphism& m);
std::vector<StateSet> mergeable_pairs(const MatrixMorphism& m);

}  // namespace killword
