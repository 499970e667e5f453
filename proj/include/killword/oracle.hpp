#pragma once

#include <map>
#include <optional>

#include "killword/codes.hpp"
#include "killword/core.hpp"

namespace killword::oracle {

// Shortest killing word by BFS over the subsets of states reachable from Q
// under forward images; complete within 2^n subsets. Returns nothing when
// the subset space is exhausted without reaching the empty set (a proof of
// immortality); throws cap_error if max_len truncates the search first.
// Ties break toward the lexicographically least word.
std::optional<Word> shortest_killing_word_bfs(const MatrixMorphism& m, std::size_t max_len);

struct MonoidTable {
  // Element -> lexicographically least among the shortest producing words.
  std::map<IntMatrix, Word> elements;
  bool complete = false;
  // Minimum rank over discovered elements; only an upper bound when the
  // table is incomplete.
  std::size_t min_rank = 0;
};

// Breadth-first closure of the generated monoid with exact-matrix
// deduplication, stopped at closure or at the caps.
MonoidTable enumerate_monoid(const MatrixMorphism& m, std::size_t element_cap,
                             std::size_t len_cap);

// Requires a complete table.
std::size_t min_rank_oracle(const MonoidTable& table);

// First word in length-then-lexicographic order that is uncompletable, up to
// max_len; nothing when no such word exists in range. Equivalent to the
// plain scan: words sharing a flower relation share all continuations, so
// deduplicating on relations preserves the scan order of the first hit.
std::optional<Word> shortest_uncompletable_brute(const Code& code, std::size_t max_len);

}  // namespace killword::oracle
