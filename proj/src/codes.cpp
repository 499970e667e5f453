#include "killword/codes.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace killword {

namespace {

bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

Word suffix_after(const Word& w, std::size_t drop) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(drop), w.end());
}

// Up to `limit` distinct factorizations of w over X, by DFS in index order.
void collect_factorizations(const Word& w, const std::vector<Word>& words, std::size_t pos,
                            std::vector<std::size_t>& current,
                            std::vector<std::vector<std::size_t>>& out, std::size_t limit) {
  if (out.size() >= limit) return;
  if (pos == w.size()) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = 0; i < words.size() && out.size() < limit; ++i) {
    const Word& x = words[i];
    if (pos + x.size() > w.size()) continue;
    if (!std::equal(x.begin(), x.end(), w.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
    current.push_back(i);
    collect_factorizations(w, words, pos + x.size(), current, out, limit);
    current.pop_back();
  }
}

// Shortest word with two distinct factorizations, via BFS over pairs of
// prefix-automaton states with a divergence flag. States are the distinct
// proper prefixes of code words; a factorization is a path from the empty
// prefix back to itself.
std::optional<Word> shortest_ambiguous_word(const Code& code) {
  const auto& words = code.words();
  std::map<Word, std::size_t> prefix_id;
  std::vector<Word> prefixes;
  auto intern = [&](const Word& p) {
    auto [it, fresh] = prefix_id.try_emplace(p, prefixes.size());
    if (fresh) prefixes.push_back(p);
    return it->second;
  };
  std::size_t root = intern(Word{});
  for (const Word& x : words)
    for (std::size_t len = 1; len < x.size(); ++len)
      intern(Word(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(len)));

  const std::size_t letters = code.alphabet().size();
  const std::size_t np = prefixes.size();
  std::vector<std::vector<std::vector<std::size_t>>> trans(
      np, std::vector<std::vector<std::size_t>>(letters));
  for (std::size_t p = 0; p < np; ++p)
    for (Letter a = 0; a < letters; ++a) {
      Word pa = prefixes[p];
      pa.push_back(a);
      auto it = prefix_id.find(pa);
      if (it != prefix_id.end()) trans[p][a].push_back(it->second);
      if (std::find(words.begin(), words.end(), pa) != words.end())
        trans[p][a].push_back(root);
    }

  auto encode = [&](std::size_t i, std::size_t j, bool diverged) {
    return (i * np + j) * 2 + (diverged ? 1 : 0);
  };
  std::vector<long> parent(np * np * 2, -1);
  std::vector<Letter> via(np * np * 2, 0);
  std::vector<bool> seen(np * np * 2, false);
  std::deque<std::size_t> queue;
  std::size_t start = encode(root, root, false);
  seen[start] = true;
  queue.push_back(start);
  std::size_t target = encode(root, root, true);
  while (!queue.empty() && !seen[target]) {
    std::size_t v = queue.front();
    queue.pop_front();
    bool diverged = v % 2;
    std::size_t i = (v / 2) / np, j = (v / 2) % np;
    for (Letter a = 0; a < letters; ++a)
      for (std::size_t t1 : trans[i][a])
        for (std::size_t t2 : trans[j][a]) {
          std::size_t u = encode(t1, t2, diverged || t1 != t2);
          if (seen[u]) continue;
          seen[u] = true;
          parent[u] = static_cast<long>(v);
          via[u] = a;
          queue.push_back(u);
        }
  }
  if (!seen[target]) return std::nullopt;
  Word w;
  for (std::size_t v = target; v != start; v = static_cast<std::size_t>(parent[v]))
    w.push_back(via[v]);
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace

Code::Code(Alphabet alphabet, std::vector<Word> words)
    : alphabet_(std::move(alphabet)), words_(std::move(words)) {
  if (words_.empty()) throw input_error("code must contain at least one word");
  std::set<Word> seen;
  for (const Word& x : words_) {
    if (x.empty()) throw input_error("code words must be nonempty");
    for (Letter a : x)
      if (a >= alphabet_.size()) throw input_error("code word letter out of range");
    if (!seen.insert(x).second)
      throw input_error("code words must be distinct: " + format_word(alphabet_, x));
    k_ = std::max(k_, x.size());
    m_ += x.size();
  }
}

CodeCheck sardinas_patterson(const Code& code) {
  const auto& words = code.words();

  // Suffix-set iteration: U1 = X^-1 X \ {eps}, U_{i+1} = X^-1 U_i u U_i^-1 X;
  // a code iff the empty word never shows up.
  std::set<Word> u;
  for (const Word& x : words)
    for (const Word& x2 : words)
      if (x != x2 && is_prefix(x, x2)) u.insert(suffix_after(x2, x.size()));

  bool is_code = true;
  std::set<std::set<Word>> seen_sets;
  while (!u.empty() && seen_sets.insert(u).second) {
    if (u.count(Word{})) {
      is_code = false;
      break;
    }
    std::set<Word> next;
    for (const Word& s : u)
      for (const Word& x : words) {
        if (is_prefix(x, s)) next.insert(suffix_after(s, x.size()));
        if (is_prefix(s, x)) next.insert(suffix_after(x, s.size()));
      }
    u = std::move(next);
  }

  auto ambiguous = shortest_ambiguous_word(code);
  if (ambiguous.has_value() == is_code)
    throw std::logic_error("suffix-set and prefix-automaton verdicts disagree");

  CodeCheck result;
  result.is_code = is_code;
  if (!is_code) {
    result.ambiguous_word = ambiguous;
    std::vector<std::size_t> current;
    collect_factorizations(*ambiguous, words, 0, current, result.factorizations, 2);
    if (result.factorizations.size() != 2)
      throw std::logic_error("ambiguous word lacks two factorizations");
  }
  return result;
}

MatrixMorphism petal_morphism(const Code& code) {
  const auto& words = code.words();
  std::size_t n = 1;
  std::vector<std::size_t> interior_start(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    interior_start[i] = n;
    n += words[i].size() - 1;
  }

  std::vector<IntMatrix> gens(code.alphabet().size(), IntMatrix(n, n));
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& x = words[i];
    for (std::size_t j = 0; j < x.size(); ++j) {
      std::size_t from = j == 0 ? 0 : interior_start[i] + j - 1;
      std::size_t to = j + 1 == x.size() ? 0 : interior_start[i] + j;
      gens[x[j]](from, to) = 1;
    }
  }
  return MatrixMorphism(code.alphabet(), n, std::move(gens));
}

FlowerAutomaton flower(const Code& code) {
  CodeCheck check = sardinas_patterson(code);
  if (!check.is_code) throw code_error(*check.ambiguous_word);

  FlowerAutomaton fl{petal_morphism(code), 0, {}, {}};
  const std::size_t n = fl.morphism.dim();
  if (n != code.m() - code.words().size() + 1)
    throw std::logic_error("flower state count mismatch");

  fl.petal_map.assign(n, std::nullopt);
  fl.return_words.assign(n, Word{});
  std::size_t state = 1;
  for (std::size_t i = 0; i < code.words().size(); ++i) {
    const Word& x = code.words()[i];
    for (std::size_t j = 1; j < x.size(); ++j, ++state) {
      fl.petal_map[state] = {{i, j}};
      fl.return_words[state] = suffix_after(x, j);
    }
  }

  if (!check_jsr_le_one(fl.morphism).ok)
    throw std::logic_error("flower of a code must be unambiguous");
  return fl;
}

bool is_uncompletable(const FlowerAutomaton& fl, const Word& v) {
  return relation_of(fl.morphism, v).is_zero();
}

bool is_uncompletable(const Code& code, const Word& v) {
  return is_uncompletable(flower(code), v);
}

Int restivo_bound(std::size_t k, std::size_t size) {
  Int kk(static_cast<unsigned long long>(k));
  Int ss(static_cast<unsigned long long>(size));
  return (kk + 1) * kk * kk * (ss + 2) * (ss + 1);
}

UncompletableResult uncompletable_word(const Code& code) {
  FlowerAutomaton fl = flower(code);
  const std::size_t k = code.k();
  const std::size_t n = fl.morphism.dim();
  const Int reported = restivo_bound(k, code.m());

  if (!mortality(fl.morphism))
    return {true, std::nullopt, reported, std::move(fl), std::nullopt};

  ScSynthesisResult sc = [&]() -> ScSynthesisResult {
    if (n == 1) return killing_word(fl.morphism);
    ScContext ctx = build_context(fl.morphism, ContextOptions{k - 1});
    if (ctx.survivors.size() > k)
      throw std::logic_error("more than k states reached by y and surviving z");
    return killing_from(ctx, restivo_bound(k, n));
  }();
  if (Int(static_cast<unsigned long long>(sc.word.size())) > reported)
    throw std::logic_error("uncompletable word exceeds the reported bound");

  UncompletableResult result{false, sc.word, reported, std::move(fl), std::move(sc)};
  return result;
}

}  // namespace killword
