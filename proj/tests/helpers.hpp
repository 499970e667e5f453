#pragma once

#include <random>
#include <string>
#include <vector>

#include "killword/analysis.hpp"
#include "killword/core.hpp"

namespace kwtest {

inline killword::MatrixMorphism make_morphism(
    std::vector<std::vector<std::vector<long long>>> gens,
    std::vector<std::string> symbols = {}) {
  using namespace killword;
  std::size_t n = gens.at(0).size();
  if (symbols.empty())
    for (std::size_t i = 0; i < gens.size(); ++i)
      symbols.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<IntMatrix> matrices;
  for (const auto& g : gens) {
    IntMatrix mat(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mat(i, j) = Int(g[i][j]);
    matrices.push_back(std::move(mat));
  }
  return MatrixMorphism(Alphabet(std::move(symbols)), n, std::move(matrices));
}

// Words over single-character alphabets in order a, b, c, ...
inline killword::Word wd(const std::string& s) {
  killword::Word w;
  for (char c : s) w.push_back(static_cast<std::size_t>(c - 'a'));
  return w;
}

inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Random {0,1} morphism kept only when the gate passes; any block structure.
inline killword::MatrixMorphism random_gated_morphism(std::size_t n, double density,
                                                      std::uint64_t seed,
                                                      std::size_t letters = 2) {
  using namespace killword;
  std::mt19937_64 rng(seed);
  std::vector<std::string> symbols;
  for (std::size_t i = 0; i < letters; ++i)
    symbols.push_back(std::string(1, static_cast<char>('a' + i)));
  Alphabet alphabet(symbols);
  for (int attempt = 0; attempt < 20000; ++attempt) {
    std::vector<IntMatrix> gens(letters, IntMatrix(n, n));
    for (auto& g : gens)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (unit_draw(rng) < density) g(i, j) = 1;
    MatrixMorphism m(alphabet, n, std::move(gens));
    if (check_jsr_le_one(m).ok) return m;
  }
  throw std::runtime_error("no gated instance found");
}

// Random complete deterministic automaton (each row one 1): unambiguous and
// immortal by construction.
inline killword::MatrixMorphism random_dfa_morphism(std::size_t n, std::uint64_t seed,
                                                    std::size_t letters = 2) {
  using namespace killword;
  std::mt19937_64 rng(seed);
  std::vector<std::string> symbols;
  for (std::size_t i = 0; i < letters; ++i)
    symbols.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<IntMatrix> gens(letters, IntMatrix(n, n));
  for (auto& g : gens)
    for (std::size_t i = 0; i < n; ++i) g(i, rng() % n) = 1;
  return MatrixMorphism(Alphabet(symbols), n, std::move(gens));
}

inline killword::Word random_word(std::mt19937_64& rng, std::size_t letters,
                                  std::size_t length) {
  killword::Word w(length);
  for (auto& a : w) a = rng() % letters;
  return w;
}

}  // namespace kwtest
