#include "doctest.h"
#include "helpers.hpp"
#include "killword/codes.hpp"
#include "killword/core.hpp"
#include "killword/generators.hpp"

using namespace killword;
using kwtest::make_morphism;
using kwtest::wd;

TEST_SUITE_BEGIN("core");

TEST_CASE("evaluate of the empty word is the identity") {
  auto m = make_morphism({{{0, 1}, {1, 0}}, {{1, 1}, {0, 1}}});
  CHECK(evaluate(m, {}) == IntMatrix::identity(2));
}

TEST_CASE("nilpotent letter squares to zero") {
  auto m = make_morphism({{{0, 1}, {0, 0}}});
  CHECK(evaluate(m, wd("aa")).is_zero());
  CHECK_FALSE(evaluate(m, wd("a")).is_zero());
}

TEST_CASE("primes family: b1 a^P is the rank-1 matrix hitting (i, p_i - 1)") {
  auto pf = primes_family(3);
  Word w{1};  // b1
  for (int i = 0; i < 30; ++i) w.push_back(0);  // a^30, P = 2*3*5
  IntMatrix mat = evaluate(pf.morphism, w);
  CHECK(rank(mat) == 1);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(mat(0, pf.state_index[i][pf.primes[i] - 1]) == 1);
  Int row_sum = 0;
  for (std::size_t j = 0; j < pf.morphism.dim(); ++j) row_sum += mat(0, j);
  CHECK(row_sum == 3);
}

TEST_CASE("evaluate is a monoid morphism") {
  std::mt19937_64 rng(7);
  auto m = kwtest::random_gated_morphism(4, 0.3, 11);
  for (int trial = 0; trial < 40; ++trial) {
    Word u = kwtest::random_word(rng, m.letters(), rng() % 6);
    Word v = kwtest::random_word(rng, m.letters(), rng() % 6);
    CHECK(evaluate(m, concat(u, v)) == evaluate(m, u) * evaluate(m, v));
  }
}

TEST_CASE("strongly connected gated morphisms only produce 0/1 entries") {
  auto m = random_strongly_connected_ufa(5, 0.25, 3);
  std::mt19937_64 rng(5);
  const std::size_t max_len = 2 * 5 * 5;
  for (int trial = 0; trial < 50; ++trial) {
    Word w = kwtest::random_word(rng, m.letters(), rng() % max_len);
    IntMatrix mat = evaluate(m, w);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) CHECK(mat(i, j) <= 1);
  }
}

TEST_CASE("image: identity, zero, and flower letters") {
  Relation id = Relation::identity(3);
  CHECK(image(id, StateSet::singleton(3, 2), Direction::forward) ==
        StateSet::singleton(3, 2));

  Relation zero(3);
  CHECK(image(zero, StateSet::full(3), Direction::forward).empty());

  // Flower of {aa, ba}: state 1 is the interior of the aa-petal, state 2 of
  // the ba-petal; only the aa-petal starts with a.
  Code c1(Alphabet({"a", "b"}), {wd("aa"), wd("ba")});
  auto fl1 = flower(c1);
  CHECK(image(fl1.morphism.support(0), StateSet::singleton(3, 0), Direction::forward) ==
        StateSet::singleton(3, 1));

  // Flower of {aa, ab}: both petals start with a, so letter a from the
  // central state reaches both interiors.
  Code c2(Alphabet({"a", "b"}), {wd("aa"), wd("ab")});
  auto fl2 = flower(c2);
  StateSet both(3);
  both.set(1);
  both.set(2);
  CHECK(image(fl2.morphism.support(0), StateSet::singleton(3, 0), Direction::forward) == both);
}

TEST_CASE("forward image distributes over union") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng() % 5;
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (kwtest::unit_draw(rng) < 0.4) r.set(i, j);
    StateSet s1(n), s2(n);
    for (std::size_t q = 0; q < n; ++q) {
      if (kwtest::unit_draw(rng) < 0.5) s1.set(q);
      if (kwtest::unit_draw(rng) < 0.5) s2.set(q);
    }
    StateSet united = s1;
    united |= s2;
    StateSet lhs = image(r, united, Direction::forward);
    StateSet rhs = image(r, s1, Direction::forward);
    rhs |= image(r, s2, Direction::forward);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("backward image is the forward image of the transpose") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng() % 5;
    Relation r(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (kwtest::unit_draw(rng) < 0.4) r.set(i, j);
    StateSet s(n);
    for (std::size_t q = 0; q < n; ++q)
      if (kwtest::unit_draw(rng) < 0.5) s.set(q);
    CHECK(image(r, s, Direction::backward) == image(r.transpose(), s, Direction::forward));
  }
}

namespace {

// Independent route for the rank check: elimination over rows with the
// largest-magnitude pivot, scanning columns right to left.
std::size_t rank_second_route(const IntMatrix& mat) {
  std::size_t n = mat.rows(), cols = mat.cols();
  std::vector<std::vector<Int>> rows(n, std::vector<Int>(cols));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < cols; ++j) rows[i][j] = mat(i, j);
  std::size_t r = 0;
  for (std::size_t cc = cols; cc-- > 0 && r < n;) {
    std::size_t best = n;
    for (std::size_t i = r; i < n; ++i) {
      if (rows[i][cc] == 0) continue;
      if (best == n || abs(rows[i][cc]) > abs(rows[best][cc])) best = i;
    }
    if (best == n) continue;
    std::swap(rows[r], rows[best]);
    for (std::size_t i = r + 1; i < n; ++i) {
      if (rows[i][cc] == 0) continue;
      Int f = rows[i][cc], p = rows[r][cc];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = rows[i][j] * p - rows[r][j] * f;
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("rank: identity, zero, and primes-family product") {
  CHECK(rank(IntMatrix::identity(4)) == 4);
  CHECK(rank(IntMatrix(3, 3)) == 0);

  auto pf = primes_family(3);
  Word w{1};
  for (int i = 0; i < 30; ++i) w.push_back(0);
  CHECK(rank(evaluate(pf.morphism, w)) == 1);
}

TEST_CASE("rank agrees with a second pivoting order on random matrices") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 5;
    IntMatrix mat(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        mat(i, j) = Int(static_cast<long long>(rng() % 7) - 3);
    CHECK(rank(mat) == rank_second_route(mat));
  }
}

TEST_CASE("alphabet and morphism validation") {
  CHECK_THROWS_AS(Alphabet({}), input_error);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), input_error);
  CHECK_THROWS_AS(Alphabet({""}), input_error);

  auto m = make_morphism({{{0, 1}, {0, 0}}});
  CHECK_THROWS_AS(evaluate(m, Word{5}), input_error);
  CHECK_THROWS_AS(image(Relation::identity(2), StateSet::full(3), Direction::forward),
                  input_error);

  // negative entries are rejected
  std::vector<IntMatrix> bad{IntMatrix(1, 1)};
  bad[0](0, 0) = -1;
  CHECK_THROWS_AS(MatrixMorphism(Alphabet({"a"}), 1, std::move(bad)), input_error);
}

TEST_SUITE_END();
