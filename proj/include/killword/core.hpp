#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "killword/errors.hpp"

namespace killword {

// Exact arithmetic everywhere: even with joint spectral radius <= 1, product
// entries can grow polynomially in the word length and overflow fixed width.
using Int = boost::multiprecision::cpp_int;

using Letter = std::size_t;

// A word is a sequence of letter indices into some Alphabet.
using Word = std::vector<Letter>;

Word concat(const Word& u, const Word& v);
Word reversed(const Word& w);
void append(Word& w, const Word& suffix);

// Ordered list of distinct, nonempty symbol names. Order defines letter
// indices 0..size()-1 and is fixed at construction.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(Letter i) const;
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<Letter> index_of(std::string_view name) const;

  bool operator==(const Alphabet& other) const = default;

 private:
  std::vector<std::string> symbols_;
};

// Renders a word as its symbol sequence, space-separated when any symbol has
// more than one character.
std::string format_word(const Alphabet& alphabet, const Word& w);

// Subset of {0..dim-1} as a bit vector.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t dim);
  static StateSet full(std::size_t dim);
  static StateSet singleton(std::size_t dim, std::size_t q);

  std::size_t dim() const { return dim_; }
  bool test(std::size_t q) const;
  void set(std::size_t q, bool value = true);

  bool empty() const;
  std::size_t count() const;
  bool contains(const StateSet& other) const;
  bool intersects(const StateSet& other) const;

  StateSet& operator|=(const StateSet& other);
  StateSet& operator&=(const StateSet& other);

  std::vector<std::size_t> elements() const;
  std::optional<std::size_t> min_element() const;

  bool operator==(const StateSet& other) const = default;
  bool operator<(const StateSet& other) const;

 private:
  void check_dim(const StateSet& other) const;

  std::size_t dim_ = 0;
  std::vector<std::uint64_t> blocks_;
};

// n x n boolean matrix; composition is the boolean matrix product.
// Rows are forward images: row(p) = { q : p -> q }.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t dim);
  static Relation identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  bool test(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
  void set(std::size_t i, std::size_t j, bool value = true) { rows_[i].set(j, value); }
  const StateSet& row(std::size_t i) const { return rows_[i]; }

  Relation operator*(const Relation& other) const;
  Relation transpose() const;
  bool is_zero() const;

  bool operator==(const Relation& other) const = default;
  bool operator<(const Relation& other) const;

 private:
  std::size_t dim_ = 0;
  std::vector<StateSet> rows_;
};

enum class Direction { forward, backward };

// Forward image { q : exists p in s with r(p,q) } or backward preimage
// { p : exists q in s with r(p,q) }.
StateSet image(const Relation& r, const StateSet& s, Direction direction);

// Dense matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& other) const;
  IntMatrix operator-(const IntMatrix& other) const;
  IntMatrix operator+(const IntMatrix& other) const;
  IntMatrix transpose() const;

  bool is_zero() const;
  bool is_nonnegative() const;

  // Zero/nonzero structure; requires a square nonnegative matrix.
  Relation support() const;

  bool operator==(const IntMatrix& other) const = default;
  bool operator<(const IntMatrix& other) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

// Rank over the rationals, by exact fraction-free elimination.
// Pivot search: columns left to right, first nonzero row from the top.
std::size_t rank(const IntMatrix& mat);

// Alphabet plus one n x n nonnegative integer matrix per letter.
class MatrixMorphism {
 public:
  MatrixMorphism(Alphabet alphabet, std::size_t dim, std::vector<IntMatrix> generators);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t dim() const { return dim_; }
  std::size_t letters() const { return alphabet_.size(); }
  const IntMatrix& generator(Letter a) const;
  const Relation& support(Letter a) const;

  // Transposed generators, same alphabet. A word valid for the transposed
  // instance must be reversed to apply to the original.
  MatrixMorphism transpose() const;

 private:
  Alphabet alphabet_;
  std::size_t dim_;
  std::vector<IntMatrix> generators_;
  std::vector<Relation> supports_;
};

// Exact product M(w) = M(a_1) ... M(a_l); the empty word gives the identity.
IntMatrix evaluate(const MatrixMorphism& m, const Word& w);

// Zero/nonzero structure of M(w), computed on supports.
Relation relation_of(const MatrixMorphism& m, const Word& w);

// One image step: forward applies letter a to a set of source states,
// backward applies it to a set of target states.
StateSet step(const MatrixMorphism& m, const StateSet& s, Letter a, Direction direction);

// Image of s under the whole word (forward: s . w, backward: w . s).
StateSet image_of_word(const MatrixMorphism& m, const StateSet& s, const Word& w,
                       Direction direction);

}  // namespace killword
