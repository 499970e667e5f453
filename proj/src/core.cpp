#include "killword/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

namespace killword {

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

Word reversed(const Word& w) {
  Word out(w.rbegin(), w.rend());
  return out;
}

void append(Word& w, const Word& suffix) {
  w.insert(w.end(), suffix.begin(), suffix.end());
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw input_error("alphabet must be nonempty");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw input_error("alphabet symbols must be nonempty");
    if (!seen.insert(s).second) throw input_error("duplicate alphabet symbol: " + s);
  }
}

const std::string& Alphabet::symbol(Letter i) const {
  if (i >= symbols_.size()) throw input_error("letter index out of range");
  return symbols_[i];
}

std::optional<Letter> Alphabet::index_of(std::string_view name) const {
  for (Letter i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == name) return i;
  return std::nullopt;
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
  bool multi = std::any_of(alphabet.symbols().begin(), alphabet.symbols().end(),
                           [](const std::string& s) { return s.size() > 1; });
  std::ostringstream out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (multi && i > 0) out << ' ';
    out << alphabet.symbol(w[i]);
  }
  return out.str();
}

namespace {
constexpr std::size_t kBlockBits = 64;
std::size_t block_count(std::size_t dim) { return (dim + kBlockBits - 1) / kBlockBits; }
}  // namespace

StateSet::StateSet(std::size_t dim) : dim_(dim), blocks_(block_count(dim), 0) {}

StateSet StateSet::full(std::size_t dim) {
  StateSet s(dim);
  for (std::size_t q = 0; q < dim; ++q) s.set(q);
  return s;
}

StateSet StateSet::singleton(std::size_t dim, std::size_t q) {
  StateSet s(dim);
  s.set(q);
  return s;
}

bool StateSet::test(std::size_t q) const {
  if (q >= dim_) throw input_error("state index out of range");
  return (blocks_[q / kBlockBits] >> (q % kBlockBits)) & 1u;
}

void StateSet::set(std::size_t q, bool value) {
  if (q >= dim_) throw input_error("state index out of range");
  std::uint64_t mask = std::uint64_t{1} << (q % kBlockBits);
  if (value)
    blocks_[q / kBlockBits] |= mask;
  else
    blocks_[q / kBlockBits] &= ~mask;
}

bool StateSet::empty() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](std::uint64_t b) { return b == 0; });
}

std::size_t StateSet::count() const {
  std::size_t total = 0;
  for (auto b : blocks_) total += static_cast<std::size_t>(std::popcount(b));
  return total;
}

void StateSet::check_dim(const StateSet& other) const {
  if (dim_ != other.dim_) throw input_error("state set dimension mismatch");
}

bool StateSet::contains(const StateSet& other) const {
  check_dim(other);
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if ((other.blocks_[i] & ~blocks_[i]) != 0) return false;
  return true;
}

bool StateSet::intersects(const StateSet& other) const {
  check_dim(other);
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if ((blocks_[i] & other.blocks_[i]) != 0) return true;
  return false;
}

StateSet& StateSet::operator|=(const StateSet& other) {
  check_dim(other);
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= other.blocks_[i];
  return *this;
}

StateSet& StateSet::operator&=(const StateSet& other) {
  check_dim(other);
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= other.blocks_[i];
  return *this;
}

std::vector<std::size_t> StateSet::elements() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < dim_; ++q)
    if (test(q)) out.push_back(q);
  return out;
}

std::optional<std::size_t> StateSet::min_element() const {
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i] != 0)
      return i * kBlockBits + static_cast<std::size_t>(std::countr_zero(blocks_[i]));
  return std::nullopt;
}

bool StateSet::operator<(const StateSet& other) const {
  check_dim(other);
  return blocks_ < other.blocks_;
}

Relation::Relation(std::size_t dim) : dim_(dim), rows_(dim, StateSet(dim)) {}

Relation Relation::identity(std::size_t dim) {
  Relation r(dim);
  for (std::size_t i = 0; i < dim; ++i) r.set(i, i);
  return r;
}

Relation Relation::operator*(const Relation& other) const {
  if (dim_ != other.dim_) throw input_error("relation dimension mismatch");
  Relation out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j : rows_[i].elements()) out.rows_[i] |= other.rows_[j];
  return out;
}

Relation Relation::transpose() const {
  Relation out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (test(i, j)) out.set(j, i);
  return out;
}

bool Relation::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const StateSet& r) { return r.empty(); });
}

bool Relation::operator<(const Relation& other) const {
  if (dim_ != other.dim_) throw input_error("relation dimension mismatch");
  return rows_ < other.rows_;
}

StateSet image(const Relation& r, const StateSet& s, Direction direction) {
  if (r.dim() != s.dim()) throw input_error("image: dimension mismatch");
  StateSet out(r.dim());
  if (direction == Direction::forward) {
    for (std::size_t p : s.elements()) out |= r.row(p);
  } else {
    for (std::size_t p = 0; p < r.dim(); ++p)
      if (r.row(p).intersects(s)) out.set(p);
  }
  return out;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw input_error("matrix product shape mismatch");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& lhs = (*this)(i, k);
      if (lhs == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const Int& rhs = other(k, j);
        if (rhs != 0) out(i, j) += lhs * rhs;
      }
    }
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw input_error("matrix shape mismatch");
  IntMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw input_error("matrix shape mismatch");
  IntMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v == 0; });
}

bool IntMatrix::is_nonnegative() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v >= 0; });
}

Relation IntMatrix::support() const {
  if (rows_ != cols_) throw input_error("support requires a square matrix");
  if (!is_nonnegative()) throw input_error("support requires a nonnegative matrix");
  Relation r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != 0) r.set(i, j);
  return r;
}

bool IntMatrix::operator<(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    return std::tie(rows_, cols_) < std::tie(other.rows_, other.cols_);
  return data_ < other.data_;
}

std::size_t rank(const IntMatrix& mat) {
  std::size_t n = mat.rows(), cols = mat.cols();
  std::vector<std::vector<Int>> rows(n, std::vector<Int>(cols));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < cols; ++j) rows[i][j] = mat(i, j);

  auto normalize = [](std::vector<Int>& row) {
    Int g = 0;
    for (const Int& v : row) g = boost::multiprecision::gcd(g, v);
    if (g > 1)
      for (Int& v : row) v /= g;
  };

  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < n; ++col) {
    std::size_t pivot = r;
    while (pivot < n && rows[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(rows[r], rows[pivot]);
    const Int p = rows[r][col];
    for (std::size_t i = r + 1; i < n; ++i) {
      if (rows[i][col] == 0) continue;
      const Int f = rows[i][col];
      for (std::size_t j = col; j < cols; ++j) rows[i][j] = rows[i][j] * p - rows[r][j] * f;
      normalize(rows[i]);
    }
    ++r;
  }
  return r;
}

MatrixMorphism::MatrixMorphism(Alphabet alphabet, std::size_t dim,
                               std::vector<IntMatrix> generators)
    : alphabet_(std::move(alphabet)), dim_(dim), generators_(std::move(generators)) {
  if (dim_ < 1) throw input_error("morphism dimension must be at least 1");
  if (generators_.size() != alphabet_.size())
    throw input_error("morphism needs exactly one generator per letter");
  supports_.reserve(generators_.size());
  for (const auto& g : generators_) {
    if (g.rows() != dim_ || g.cols() != dim_)
      throw input_error("generator has wrong dimensions");
    if (!g.is_nonnegative()) throw input_error("generator entries must be nonnegative");
    supports_.push_back(g.support());
  }
}

const IntMatrix& MatrixMorphism::generator(Letter a) const {
  if (a >= generators_.size()) throw input_error("letter index out of range");
  return generators_[a];
}

const Relation& MatrixMorphism::support(Letter a) const {
  if (a >= supports_.size()) throw input_error("letter index out of range");
  return supports_[a];
}

MatrixMorphism MatrixMorphism::transpose() const {
  std::vector<IntMatrix> gens;
  gens.reserve(generators_.size());
  for (const auto& g : generators_) gens.push_back(g.transpose());
  return MatrixMorphism(alphabet_, dim_, std::move(gens));
}

IntMatrix evaluate(const MatrixMorphism& m, const Word& w) {
  IntMatrix out = IntMatrix::identity(m.dim());
  for (Letter a : w) out = out * m.generator(a);
  return out;
}

Relation relation_of(const MatrixMorphism& m, const Word& w) {
  Relation out = Relation::identity(m.dim());
  for (Letter a : w) out = out * m.support(a);
  return out;
}

StateSet step(const MatrixMorphism& m, const StateSet& s, Letter a, Direction direction) {
  return image(m.support(a), s, direction);
}

StateSet image_of_word(const MatrixMorphism& m, const StateSet& s, const Word& w,
                       Direction direction) {
  StateSet cur = s;
  if (direction == Direction::forward) {
    for (Letter a : w) cur = step(m, cur, a, Direction::forward);
  } else {
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      cur = step(m, cur, *it, Direction::backward);
  }
  return cur;
}

}  // namespace killword
