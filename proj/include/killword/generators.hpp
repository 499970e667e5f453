#pragma once

#include <cstdint>
#include <vector>

#include "killword/codes.hpp"
#include "killword/core.hpp"

namespace killword {

// The primes construction: a central state plus one cycle of length p_i per
// petal, letter a advancing every cycle and letter b_i collapsing petal i
// onto the central state. Minimum rank 1, but the shortest word realizing
// the rank-1 matrix reached by b_1 a^P has superpolynomial length.
struct PrimesFamilyInstance {
  std::size_t m_petals = 0;
  std::vector<std::size_t> primes;  // first m_petals primes
  MatrixMorphism morphism;          // alphabet {a, b1, .., bm}
  std::size_t central = 0;
  // state_index[i][j] is the flat index of cycle state (i+1, j).
  std::vector<std::vector<std::size_t>> state_index;
  Int product;  // P = p_1 ... p_m
};

PrimesFamilyInstance primes_family(std::size_t m_petals);

// Rejection sampling over random {0,1} generators on the two-letter alphabet
// {a, b}: entries are drawn at the given density, instances failing strong
// connectivity or the gate are discarded. Deterministic under
// (n, density, seed); gives up after 10000 rejections.
MatrixMorphism random_strongly_connected_ufa(std::size_t n, double density, std::uint64_t seed);

// Random set of distinct nonempty words kept only when it is a code;
// deterministic under the seed, same rejection cap.
Code random_code(std::size_t alphabet_size, std::size_t max_words, std::size_t max_len,
                 std::uint64_t seed);

}  // namespace killword
