#include "killword/oracle.hpp"

#include <algorithm>
#include <deque>

namespace killword::oracle {

std::optional<Word> shortest_killing_word_bfs(const MatrixMorphism& m, std::size_t max_len) {
  const std::size_t n = m.dim();
  StateSet start = StateSet::full(n);

  std::map<StateSet, std::pair<StateSet, Letter>> parent;
  std::deque<std::pair<StateSet, std::size_t>> queue{{start, 0}};
  std::set<StateSet> seen{start};

  auto reconstruct = [&](StateSet s) {
    Word w;
    while (!(s == start)) {
      auto& [prev, a] = parent.at(s);
      w.push_back(a);
      s = prev;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  while (!queue.empty()) {
    auto [s, depth] = queue.front();
    queue.pop_front();
    for (Letter a = 0; a < m.letters(); ++a) {
      StateSet next = step(m, s, a, Direction::forward);
      if (seen.count(next)) continue;
      if (depth + 1 > max_len)
        throw cap_error("subset search truncated at max length " + std::to_string(max_len));
      seen.insert(next);
      parent.emplace(next, std::make_pair(s, a));
      if (next.empty()) return reconstruct(next);
      queue.push_back({std::move(next), depth + 1});
    }
  }
  return std::nullopt;
}

MonoidTable enumerate_monoid(const MatrixMorphism& m, std::size_t element_cap,
                             std::size_t len_cap) {
  MonoidTable table;
  IntMatrix id = IntMatrix::identity(m.dim());
  table.elements.emplace(id, Word{});
  table.min_rank = m.dim();

  std::deque<const IntMatrix*> frontier;
  frontier.push_back(&table.elements.begin()->first);
  std::size_t level = 0;
  bool capped = false;

  while (!frontier.empty() && !capped) {
    if (level >= len_cap) {
      capped = true;
      break;
    }
    std::deque<const IntMatrix*> next;
    for (const IntMatrix* mat : frontier) {
      const Word& word = table.elements.at(*mat);
      for (Letter a = 0; a < m.letters(); ++a) {
        IntMatrix prod = *mat * m.generator(a);
        if (table.elements.count(prod)) continue;
        Word w = word;
        w.push_back(a);
        table.min_rank = std::min(table.min_rank, rank(prod));
        auto [it, _] = table.elements.emplace(std::move(prod), std::move(w));
        next.push_back(&it->first);
        if (table.elements.size() > element_cap) {
          capped = true;
          break;
        }
      }
      if (capped) break;
    }
    frontier = std::move(next);
    ++level;
  }
  table.complete = !capped && frontier.empty();
  return table;
}

std::size_t min_rank_oracle(const MonoidTable& table) {
  if (!table.complete)
    throw precondition_error("monoid table is incomplete; min rank is only an upper bound");
  return table.min_rank;
}

std::optional<Word> shortest_uncompletable_brute(const Code& code, std::size_t max_len) {
  FlowerAutomaton fl = flower(code);
  const MatrixMorphism& m = fl.morphism;

  Relation id = Relation::identity(m.dim());
  std::set<Relation> seen{id};
  std::deque<std::pair<Relation, Word>> queue{{id, Word{}}};
  while (!queue.empty()) {
    auto [rel, word] = std::move(queue.front());
    queue.pop_front();
    if (word.size() >= max_len) continue;
    for (Letter a = 0; a < m.letters(); ++a) {
      Relation next = rel * m.support(a);
      if (seen.count(next)) continue;
      Word w = word;
      w.push_back(a);
      if (next.is_zero()) return w;
      seen.insert(next);
      queue.push_back({std::move(next), std::move(w)});
    }
  }
  return std::nullopt;
}

}  // namespace killword::oracle
