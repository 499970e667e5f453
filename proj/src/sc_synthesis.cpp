#include "killword/sc_synthesis.hpp"

#include <algorithm>
#include <stdexcept>

namespace killword {

namespace {

Int int_of(std::size_t v) { return Int(static_cast<unsigned long long>(v)); }

// Shared machinery for the z loop and its dual: the per-state extender loop
// prepends coreachability witnesses, the outer loop appends extenders until
// no coreachable pair survives. A nonzero seed length reproduces the
// flower-specialized variants.
class LoopBuilder {
 public:
  LoopBuilder(const MatrixMorphism& m, std::size_t init_length)
      : m_(m), n_(m.dim()), init_length_(init_length), pairs_(m) {
    coreach_.reserve(n_);
    for (std::size_t q = 0; q < n_; ++q) coreach_.push_back(pairs_.pairs_of(q));
  }

  std::size_t observed_max() const { return observed_max_; }

  // Lexicographically least word of the seed length that keeps the given
  // source set alive (every state of a flower automaton lies on a cycle, so
  // a live letter always exists).
  Word initial_word(std::optional<std::size_t> from) {
    Word w;
    StateSet s = from ? StateSet::singleton(n_, *from) : StateSet::full(n_);
    for (std::size_t t = 0; t < init_length_; ++t) {
      bool found = false;
      for (Letter a = 0; a < m_.letters(); ++a) {
        StateSet next = step(m_, s, a, Direction::forward);
        if (next.empty()) continue;
        w.push_back(a);
        s = std::move(next);
        found = true;
        break;
      }
      if (!found) throw std::logic_error("seed word construction ran into a dead end");
    }
    return w;
  }

  const Word& extender(std::size_t q) {
    auto it = extender_cache_.find(q);
    if (it != extender_cache_.end()) return it->second;

    Word w = initial_word(q);
    Relation r = relation_of(m_, w);
    std::size_t prev = r.row(q).count();
    if (prev == 0) throw std::logic_error("extender seed killed its own state");
    observed_max_ = std::max(observed_max_, prev);

    const std::size_t max_iters = init_length_ > 0 ? init_length_ : n_ - 1;
    std::size_t iters = 0;
    while (true) {
      std::optional<std::size_t> survivor;
      for (std::size_t q2 : coreach_[q].elements())
        if (!r.row(q2).empty()) {
          survivor = q2;
          break;
        }
      if (!survivor) break;
      auto wqq = pairs_.witness_from(q, q, *survivor);
      if (!wqq) throw std::logic_error("coreachable pair without witness");
      w = concat(*wqq, w);
      r = relation_of(m_, *wqq) * r;
      std::size_t cur = r.row(q).count();
      if (cur <= prev) throw std::logic_error("extender image failed to grow");
      prev = cur;
      observed_max_ = std::max(observed_max_, cur);
      if (++iters > max_iters) throw std::logic_error("extender loop exceeded its bound");
    }
    return extender_cache_.emplace(q, std::move(w)).first->second;
  }

  // The z loop: while some coreachable pair survives, pick a state of p.w
  // and append its extender. Coreachable pairs are scanned in lexicographic
  // order and the smallest state of p.w is taken.
  Word build() {
    Word w = initial_word(std::nullopt);
    Relation r = relation_of(m_, w);
    const std::size_t max_iters = init_length_ > 0 ? init_length_ + 1 : n_ / 2;
    std::size_t iters = 0;
    while (true) {
      std::optional<std::size_t> p;
      for (std::size_t cand = 0; cand < n_ && !p; ++cand) {
        if (r.row(cand).empty()) continue;
        for (std::size_t cand2 : coreach_[cand].elements())
          if (!r.row(cand2).empty()) {
            p = cand;
            break;
          }
      }
      if (!p) break;
      std::size_t q = *r.row(*p).min_element();
      const Word& wq = extender(q);
      append(w, wq);
      r = r * relation_of(m_, wq);
      if (++iters > max_iters) throw std::logic_error("exclusion loop exceeded its bound");
    }
    return w;
  }

 private:
  const MatrixMorphism& m_;
  std::size_t n_;
  std::size_t init_length_;
  PairGraph pairs_;
  std::vector<StateSet> coreach_;
  std::map<std::size_t, Word> extender_cache_;
  std::size_t observed_max_ = 1;
};

// Exact integer row basis in echelon form; membership over the rationals.
class RowBasis {
 public:
  // Returns true (and absorbs the row) when v is independent of the basis.
  bool add(std::vector<Int> v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Int coeff = v[pivots_[i]];
      if (coeff == 0) continue;
      const Int lead = rows_[i][pivots_[i]];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] * lead - rows_[i][j] * coeff;
      normalize(v);
    }
    std::size_t pivot = v.size();
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        pivot = j;
        break;
      }
    if (pivot == v.size()) return false;
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
    return true;
  }

 private:
  static void normalize(std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
    if (g > 1)
      for (Int& x : v) x /= g;
  }

  std::vector<std::vector<Int>> rows_;
  std::vector<std::size_t> pivots_;
};

void check_exclusions(const ScContext& ctx) {
  const MatrixMorphism& m = ctx.morphism;
  const std::size_t n = m.dim();
  auto co = coreachable_pairs(m);
  auto me = mergeable_pairs(m);

  StateSet reached(n);
  for (std::size_t p = 0; p < n; ++p) reached |= ctx.relation_y.row(p);

  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t p2 = p + 1; p2 < n; ++p2) {
      if (co[p].test(p2) && !ctx.relation_z.row(p).empty() && !ctx.relation_z.row(p2).empty())
        throw std::logic_error("coreachable pair survives z");
      if (me[p].test(p2) && reached.test(p) && reached.test(p2))
        throw std::logic_error("mergeable pair reached by y");
    }
}

void check_length_bounds(const ScContext& ctx) {
  const Int n = int_of(ctx.morphism.dim());
  const Int z_len = int_of(ctx.z.size());
  const Int y_len = int_of(ctx.y.size());
  if (ctx.init_length == 0) {
    if (4 * z_len > (int_of(ctx.c_realized) - 1) * (n + 2) * n * (n - 1))
      throw std::logic_error("z exceeds its length bound");
    if (4 * y_len > (int_of(ctx.m_realized) - 1) * (n + 2) * n * (n - 1))
      throw std::logic_error("y exceeds its length bound");
  } else {
    const Int k = int_of(ctx.init_length + 1);
    if (2 * z_len > k * (k - 1) * (n + 2) * (n + 1))
      throw std::logic_error("seeded z exceeds its length bound");
    if (2 * y_len > k * (k - 1) * (n + 2) * (n + 1))
      throw std::logic_error("seeded y exceeds its length bound");
  }
}

ScContext trivial_context(const MatrixMorphism& m) {
  ScContext ctx{m, {}, {}, {0}, 1, 1, 0, Relation::identity(1), Relation::identity(1)};
  return ctx;
}

std::size_t smallest_zero_letter(const MatrixMorphism& m) {
  for (Letter a = 0; a < m.letters(); ++a)
    if (m.generator(a)(0, 0) == 0) return a;
  throw std::logic_error("mortal 1-state morphism without a zero generator");
}

}  // namespace

Word extender_word(const MatrixMorphism& m, std::size_t q) {
  if (q >= m.dim()) throw input_error("state index out of range");
  if (!is_strongly_connected(m))
    throw precondition_error("extender_word requires a strongly connected morphism");
  require_jsr_le_one(m);
  LoopBuilder builder(m, 0);
  return builder.extender(q);
}

ScContext build_context(const MatrixMorphism& m, const ContextOptions& opts) {
  if (!is_strongly_connected(m))
    throw precondition_error("build_context requires a strongly connected morphism");
  require_jsr_le_one(m);

  ScContext ctx{m, {}, {}, {}, 1, 1, opts.init_length, Relation(), Relation()};

  LoopBuilder primal(m, opts.init_length);
  ctx.z = primal.build();
  ctx.c_realized = primal.observed_max();

  MatrixMorphism mt = m.transpose();
  LoopBuilder dual(mt, opts.init_length);
  ctx.y = reversed(dual.build());
  ctx.m_realized = dual.observed_max();

  ctx.relation_z = relation_of(m, ctx.z);
  ctx.relation_y = relation_of(m, ctx.y);

  StateSet reached(m.dim());
  for (std::size_t p = 0; p < m.dim(); ++p) reached |= ctx.relation_y.row(p);
  for (std::size_t q = 0; q < m.dim(); ++q)
    if (reached.test(q) && !ctx.relation_z.row(q).empty()) ctx.survivors.push_back(q);

  check_exclusions(ctx);
  check_length_bounds(ctx);
  return ctx;
}

Word separator_word(const ScContext& ctx, std::size_t i) {
  const MatrixMorphism& m = ctx.morphism;
  const std::size_t n = m.dim();
  if (i >= ctx.survivors.size()) throw input_error("survivor index out of range");
  if (!mortality(m))
    throw precondition_error("separator_word requires a mortal morphism");

  // e: characteristic row of q_i z.  f: characteristic column of
  // y {q_1..q_k}, i.e. the states from which y reaches a survivor.
  std::vector<Int> e(n, 0);
  for (std::size_t q : ctx.relation_z.row(ctx.survivors[i]).elements()) e[q] = 1;

  StateSet survivor_set(n);
  for (std::size_t q : ctx.survivors) survivor_set.set(q);
  StateSet f = image(ctx.relation_y, survivor_set, Direction::backward);

  auto pairing = [&](const std::vector<Int>& vec) {
    Int total = 0;
    for (std::size_t p : f.elements()) total += vec[p];
    if (total > 1) throw std::logic_error("separator probe exceeds 1: ambiguity");
    return total;
  };

  auto augmented = [](const std::vector<Int>& vec) {
    std::vector<Int> out = vec;
    out.push_back(1);
    return out;
  };

  auto times_generator = [&](const std::vector<Int>& vec, Letter a) {
    const IntMatrix& gen = m.generator(a);
    std::vector<Int> out(n, 0);
    for (std::size_t p = 0; p < n; ++p) {
      if (vec[p] == 0) continue;
      for (std::size_t q = 0; q < n; ++q)
        if (gen(p, q) != 0) out[q] += vec[p] * gen(p, q);
    }
    return out;
  };

  struct Entry {
    Word word;
    std::vector<Int> vec;
  };
  std::vector<Entry> entries;
  entries.push_back({Word{}, e});
  pairing(e);
  RowBasis basis;
  basis.add(augmented(e));

  // Grow a basis of <(e M(x) | 1)>; scan entries in insertion order and
  // letters in alphabet order, restarting after each extension.
  bool extended = true;
  while (extended) {
    extended = false;
    for (std::size_t idx = 0; idx < entries.size() && !extended; ++idx) {
      for (Letter a = 0; a < m.letters(); ++a) {
        std::vector<Int> vec = times_generator(entries[idx].vec, a);
        pairing(vec);
        if (!basis.add(augmented(vec))) continue;
        Word word = entries[idx].word;
        word.push_back(a);
        if (word.size() > n) throw std::logic_error("basis word exceeds n letters");
        entries.push_back({std::move(word), std::move(vec)});
        extended = true;
        break;
      }
    }
  }
  if (entries.size() > n + 1) throw std::logic_error("basis grew past dimension n+1");

  for (const Entry& entry : entries) {
    if (pairing(entry.vec) != 0) continue;
    // q_i z x y z must come out empty.
    StateSet s = ctx.relation_z.row(ctx.survivors[i]);
    s = image_of_word(m, s, entry.word, Direction::forward);
    s = image_of_word(m, s, ctx.y, Direction::forward);
    s = image_of_word(m, s, ctx.z, Direction::forward);
    if (!s.empty()) throw std::logic_error("separator postcondition failed");
    return entry.word;
  }
  throw std::logic_error("no separator found despite mortality");
}

Int killing_bound(std::size_t n) {
  Int nn = int_of(n);
  return (nn * nn * nn * nn * (nn + 15)) / 16;
}

ScSynthesisResult killing_from(const ScContext& ctx, const Int& bound) {
  const MatrixMorphism& m = ctx.morphism;
  const std::size_t n = m.dim();
  if (!mortality(m))
    throw precondition_error("killing word requires a mortal morphism; use min_rank_word");

  const std::size_t k = ctx.survivors.size();
  Word yz = concat(ctx.y, ctx.z);
  Word w = yz;
  StateSet s = image_of_word(m, StateSet::full(n), w, Direction::forward);

  std::vector<std::pair<std::size_t, Word>> separators;
  std::map<std::size_t, Word> cache;
  std::size_t prev_generator = k + 1;
  while (!s.empty()) {
    // The generator of Q w: the unique subset of survivors whose z-images
    // partition s.
    std::vector<std::size_t> gen_indices;
    StateSet covered(n);
    for (std::size_t j = 0; j < k; ++j) {
      const StateSet& qz = ctx.relation_z.row(ctx.survivors[j]);
      if (s.contains(qz)) {
        gen_indices.push_back(j);
        covered |= qz;
      }
    }
    if (!(covered == s) || gen_indices.empty())
      throw std::logic_error("killing loop: image of Q has no generator");
    if (gen_indices.size() >= prev_generator)
      throw std::logic_error("killing loop: generator failed to shrink");
    prev_generator = gen_indices.size();

    std::size_t i = gen_indices.front();
    auto it = cache.find(i);
    if (it == cache.end()) it = cache.emplace(i, separator_word(ctx, i)).first;
    separators.push_back({i, it->second});

    append(w, it->second);
    append(w, yz);
    s = image_of_word(m, s, it->second, Direction::forward);
    s = image_of_word(m, s, yz, Direction::forward);
  }

  if (!relation_of(m, w).is_zero()) throw std::logic_error("killing word failed to verify");
  // |w| <= |yz| + k (n + |yz|), then the closed form.
  if (int_of(w.size()) > int_of(yz.size()) + int_of(k) * (int_of(n) + int_of(yz.size())))
    throw std::logic_error("killing word exceeds the loop bound");
  if (int_of(w.size()) > bound) throw std::logic_error("killing word exceeds the closed-form bound");

  return ScSynthesisResult{std::move(w), 0, bound, ctx, std::move(separators)};
}

ScSynthesisResult min_rank_from(const ScContext& ctx, const Int& bound) {
  const MatrixMorphism& m = ctx.morphism;
  if (mortality(m))
    throw precondition_error("morphism is mortal; use killing_word");

  Word w = concat(ctx.y, ctx.z);
  const std::size_t k = ctx.survivors.size();
  if (rank(evaluate(m, w)) != k)
    throw std::logic_error("rank of M(y z) differs from the survivor count");

  const Int n = int_of(m.dim());
  if (ctx.init_length == 0 &&
      4 * int_of(w.size()) >
          (int_of(ctx.c_realized) + int_of(ctx.m_realized) - 2) * (n + 2) * n * (n - 1))
    throw std::logic_error("y z exceeds its length bound");
  if (int_of(w.size()) > bound)
    throw std::logic_error("y z exceeds the closed-form bound");

  return ScSynthesisResult{std::move(w), k, bound, ctx, {}};
}

ScSynthesisResult killing_word(const MatrixMorphism& m) {
  if (!is_strongly_connected(m))
    throw precondition_error("killing_word requires a strongly connected morphism");
  if (!mortality(m))
    throw precondition_error("morphism is immortal; use min_rank_word");

  if (m.dim() == 1) {
    // A mortal 1-state morphism has a zero generator; that letter kills.
    Letter a = smallest_zero_letter(m);
    return ScSynthesisResult{{a}, 0, killing_bound(1), trivial_context(m), {{0, {a}}}};
  }
  ScContext ctx = build_context(m);
  return killing_from(ctx, killing_bound(m.dim()));
}

ScSynthesisResult min_rank_word(const MatrixMorphism& m) {
  if (!is_strongly_connected(m))
    throw precondition_error("min_rank_word requires a strongly connected morphism");
  if (mortality(m))
    throw precondition_error("morphism is mortal; use killing_word");

  if (m.dim() == 1)
    return ScSynthesisResult{{}, 1, killing_bound(1), trivial_context(m), {}};
  ScContext ctx = build_context(m);
  return min_rank_from(ctx, killing_bound(m.dim()));
}

}  // namespace killword
