#include "killword/generators.hpp"

#include <random>
#include <set>
#include <string>

#include "killword/analysis.hpp"

namespace killword {

namespace {

std::vector<std::size_t> first_primes(std::size_t count) {
  std::vector<std::size_t> primes;
  for (std::size_t cand = 2; primes.size() < count; ++cand) {
    bool prime = true;
    for (std::size_t p : primes) {
      if (p * p > cand) break;
      if (cand % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(cand);
  }
  return primes;
}

// Raw mt19937_64 draws only: distribution adapters are not portable across
// standard libraries, and seeds must reproduce everywhere.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t draw_below(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % bound);
}

}  // namespace

PrimesFamilyInstance primes_family(std::size_t m_petals) {
  if (m_petals < 1) throw input_error("primes family needs at least one petal");

  std::vector<std::size_t> primes = first_primes(m_petals);
  std::vector<std::string> symbols{"a"};
  for (std::size_t i = 1; i <= m_petals; ++i) symbols.push_back("b" + std::to_string(i));

  std::size_t n = 1;
  std::vector<std::vector<std::size_t>> state_index(m_petals);
  for (std::size_t i = 0; i < m_petals; ++i) {
    state_index[i].resize(primes[i]);
    for (std::size_t j = 0; j < primes[i]; ++j) state_index[i][j] = n++;
  }

  std::vector<IntMatrix> gens(1 + m_petals, IntMatrix(n, n));
  for (std::size_t i = 0; i < m_petals; ++i) {
    gens[0](0, state_index[i][0]) = 1;
    for (std::size_t j = 0; j < primes[i]; ++j)
      gens[0](state_index[i][j], state_index[i][(j + 1) % primes[i]]) = 1;
    gens[1 + i](0, 0) = 1;
    for (std::size_t j = 0; j < primes[i]; ++j) gens[1 + i](state_index[i][j], 0) = 1;
  }

  Int product = 1;
  for (std::size_t p : primes) product *= Int(static_cast<unsigned long long>(p));

  PrimesFamilyInstance instance{
      m_petals, std::move(primes),
      MatrixMorphism(Alphabet(std::move(symbols)), n, std::move(gens)),
      0, std::move(state_index), std::move(product)};
  return instance;
}

MatrixMorphism random_strongly_connected_ufa(std::size_t n, double density,
                                             std::uint64_t seed) {
  if (n < 1) throw input_error("dimension must be at least 1");
  if (!(density > 0.0 && density < 1.0)) throw input_error("density must lie in (0,1)");

  std::mt19937_64 rng(seed);
  Alphabet alphabet({"a", "b"});
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<IntMatrix> gens(2, IntMatrix(n, n));
    for (auto& g : gens)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (unit_draw(rng) < density) g(i, j) = 1;
    MatrixMorphism m(alphabet, n, std::move(gens));
    if (is_strongly_connected(m) && check_jsr_le_one(m).ok) return m;
  }
  throw cap_error("no strongly connected unambiguous instance after 10000 draws; "
                  "try a different density");
}

Code random_code(std::size_t alphabet_size, std::size_t max_words, std::size_t max_len,
                 std::uint64_t seed) {
  if (alphabet_size < 1 || max_words < 1 || max_len < 1)
    throw input_error("random_code parameters must be at least 1");
  if (alphabet_size > 26) throw input_error("at most 26 single-letter symbols");

  std::vector<std::string> symbols;
  for (std::size_t i = 0; i < alphabet_size; ++i)
    symbols.push_back(std::string(1, static_cast<char>('a' + i)));
  Alphabet alphabet(symbols);

  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::size_t count = 1 + draw_below(rng, max_words);
    std::set<Word> sample;
    for (int draws = 0; sample.size() < count && draws < 1000; ++draws) {
      std::size_t len = 1 + draw_below(rng, max_len);
      Word w(len);
      for (auto& a : w) a = draw_below(rng, alphabet_size);
      sample.insert(std::move(w));
    }
    if (sample.size() < count) continue;
    Code candidate(alphabet, std::vector<Word>(sample.begin(), sample.end()));
    if (sardinas_patterson(candidate).is_code) return candidate;
  }
  throw cap_error("no code found after 10000 draws; try different parameters");
}

}  // namespace killword
