#include "coxrep/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <set>
#include <unordered_set>

#include "json.hpp"

namespace coxrep {

namespace {

void check_letters(const Word& w, int rank) {
  for (int s : w) {
    if (s < 0 || s >= rank) throw Error("generator index out of range");
  }
}

// Root tracking in the geometric representation.  sigma(s) x =
// x - 2 B(e_s, x) e_s, where B is the cosine form of the presentation.
// A word is manipulated through the walk of +/- roots it induces: the
// only positive root sent negative by sigma(s) is e_s, which pins the
// exchange position exactly.
struct Engine {
  int rank;
  std::vector<double> b;  // row-major bilinear form

  explicit Engine(const CoxeterMatrix& m) : rank(m.rank()), b(m.rank() * m.rank()) {
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) {
        if (i == j) {
          b[i * rank + j] = 1.0;
        } else {
          int o = m.order(i, j);
          b[i * rank + j] = o == kInfiniteOrder ? -1.0 : -std::cos(std::numbers::pi / o);
        }
      }
    }
  }

  void apply(int s, double* x) const {
    double dot = 0.0;
    const double* row = &b[static_cast<std::size_t>(s) * rank];
    for (int j = 0; j < rank; ++j) dot += row[j] * x[j];
    x[s] -= 2.0 * dot;
  }

  // Root walks in groups with indefinite form grow exponentially, and
  // a coordinate that has to cancel back to O(1) carries an absolute
  // error of order eps * (largest magnitude seen).  The decision band
  // widens accordingly; anything falling inside it raises
  // ToleranceError, and callers fall back to reduce_reference.
  struct Walk {
    double path_max = 1.0;
    int steps = 0;
    double band() const {
      return std::max(kDescentTol, path_max * (steps + 1) * 1e-15);
    }
  };

  // Sign of a +/- root: decided on the coordinate of largest modulus.
  int root_sign(const double* x, Walk& walk) const {
    double lead = 0.0;
    for (int j = 0; j < rank; ++j) {
      if (std::abs(x[j]) > std::abs(lead)) lead = x[j];
    }
    walk.steps++;
    walk.path_max = std::max(walk.path_max, std::abs(lead));
    double band = walk.band();
    if (lead > band) return 1;
    if (lead < -band) return -1;
    throw ToleranceError("descent test inside the tolerance band");
  }

  // Right-multiplies the reduced word r by s, keeping it reduced.
  void append(Word& r, int s, std::vector<double>& buf) const {
    buf.assign(rank, 0.0);
    buf[s] = 1.0;
    Walk walk;
    for (int j = static_cast<int>(r.size()) - 1; j >= 0; --j) {
      apply(r[j], buf.data());
      if (root_sign(buf.data(), walk) < 0) {
        r.erase(r.begin() + j);
        return;
      }
    }
    r.push_back(s);
  }

  // Removes from the reduced word r the letter cancelling a left
  // multiplication by s.  Precondition: l(s r) < l(r).
  void left_delete(Word& r, int s, std::vector<double>& buf) const {
    buf.assign(rank, 0.0);
    buf[s] = 1.0;
    Walk walk;
    for (std::size_t j = 0; j < r.size(); ++j) {
      apply(r[j], buf.data());
      if (root_sign(buf.data(), walk) < 0) {
        r.erase(r.begin() + j);
        return;
      }
    }
    throw ToleranceError("exchange position lost to accumulated error");
  }

  // minv <- Mat(sigma(s)) * minv
  void left_mult_sigma(std::vector<double>& minv, int s) const {
    const double* row = &b[static_cast<std::size_t>(s) * rank];
    for (int c = 0; c < rank; ++c) {
      double dot = 0.0;
      for (int j = 0; j < rank; ++j) dot += row[j] * minv[static_cast<std::size_t>(j) * rank + c];
      minv[static_cast<std::size_t>(s) * rank + c] -= 2.0 * dot;
    }
  }

  // minv <- minv * Mat(sigma(s))
  void right_mult_sigma(std::vector<double>& minv, int s, std::vector<double>& col) const {
    col.resize(rank);
    for (int i = 0; i < rank; ++i) col[i] = minv[static_cast<std::size_t>(i) * rank + s];
    const double* row = &b[static_cast<std::size_t>(s) * rank];
    for (int c = 0; c < rank; ++c) {
      double f = 2.0 * row[c];
      for (int i = 0; i < rank; ++i) minv[static_cast<std::size_t>(i) * rank + c] -= f * col[i];
    }
  }

  int column_sign(const std::vector<double>& minv, int c, const Walk& walk) const {
    double lead = 0.0;
    for (int i = 0; i < rank; ++i) {
      double v = minv[static_cast<std::size_t>(i) * rank + c];
      if (std::abs(v) > std::abs(lead)) lead = v;
    }
    double band = walk.band();
    if (lead > band) return 1;
    if (lead < -band) return -1;
    throw ToleranceError("descent test inside the tolerance band");
  }

  // Reduced word -> ShortLex normal form, by repeatedly stripping the
  // least left descent (the first letter of the ShortLex word).
  Word canonicalize(Word r) const {
    Word out;
    out.reserve(r.size());
    std::vector<double> minv(static_cast<std::size_t>(rank) * rank, 0.0);
    for (int i = 0; i < rank; ++i) minv[static_cast<std::size_t>(i) * rank + i] = 1.0;
    Walk walk;
    auto track = [&] {
      walk.steps++;
      for (double v : minv) walk.path_max = std::max(walk.path_max, std::abs(v));
    };
    for (int j : r) {
      left_mult_sigma(minv, j);  // sigma(g^-1)
      track();
    }
    std::vector<double> buf, col;
    while (!r.empty()) {
      int s = -1;
      for (int cand = 0; cand < rank; ++cand) {
        if (column_sign(minv, cand, walk) < 0) {
          s = cand;
          break;
        }
      }
      if (s < 0) throw Error("internal: nonempty word without a left descent");
      out.push_back(s);
      left_delete(r, s, buf);
      right_mult_sigma(minv, s, col);  // g <- s g, so g^-1 <- g^-1 s
      track();
    }
    return out;
  }

  Word reduce_word(const Word& w) const {
    Word r;
    r.reserve(w.size());
    std::vector<double> buf;
    for (int s : w) append(r, s, buf);
    return canonicalize(std::move(r));
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int s : w) {
      h ^= static_cast<std::uint64_t>(s) + 1;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// All words reachable from w by braid moves alone (length preserved).
// Deterministic BFS order.
std::vector<Word> braid_closure(const Word& w, const CoxeterMatrix& m) {
  std::vector<Word> out;
  std::unordered_set<Word, WordHash> seen;
  std::deque<Word> queue;
  queue.push_back(w);
  seen.insert(w);
  while (!queue.empty()) {
    Word cur = std::move(queue.front());
    queue.pop_front();
    out.push_back(cur);
    const int n = static_cast<int>(cur.size());
    for (int i = 0; i + 1 < n; ++i) {
      int s = cur[i], t = cur[i + 1];
      if (s == t) continue;
      int o = m.order(s, t);
      if (o == kInfiniteOrder || i + o > n) continue;
      bool alternating = true;
      for (int j = 0; j < o; ++j) {
        if (cur[i + j] != (j % 2 == 0 ? s : t)) {
          alternating = false;
          break;
        }
      }
      if (!alternating) continue;
      Word next = cur;
      for (int j = 0; j < o; ++j) next[i + j] = (j % 2 == 0 ? t : s);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return out;
}

std::optional<Word> delete_adjacent_pair(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == w[i + 1]) {
      Word shorter;
      shorter.reserve(w.size() - 2);
      shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<long>(i));
      shorter.insert(shorter.end(), w.begin() + static_cast<long>(i) + 2, w.end());
      return shorter;
    }
  }
  return std::nullopt;
}

}  // namespace

CoxeterMatrix::CoxeterMatrix(int rank, const std::vector<std::vector<int>>& orders) : rank_(rank) {
  if (rank < 1) throw ParseError("rank must be a positive integer");
  if (orders.size() != static_cast<std::size_t>(rank))
    throw ParseError("m must be a rank x rank matrix");
  m_.resize(static_cast<std::size_t>(rank) * rank);
  for (int i = 0; i < rank; ++i) {
    if (orders[i].size() != static_cast<std::size_t>(rank))
      throw ParseError("m must be a rank x rank matrix");
    for (int j = 0; j < rank; ++j) m_[static_cast<std::size_t>(i) * rank + j] = orders[i][j];
  }
  for (int i = 0; i < rank; ++i) {
    if (order(i, i) != 1) throw ParseError("diagonal orders must be 1");
    for (int j = 0; j < rank; ++j) {
      if (order(i, j) < 0) throw ParseError("orders must be non-negative integers");
      if (order(i, j) != order(j, i)) throw ParseError("m must be symmetric");
      if (i != j && order(i, j) == 1)
        throw ParseError("off-diagonal orders must be >= 2 or infinite");
    }
  }
}

CoxeterMatrix CoxeterMatrix::parse(std::string_view text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("malformed JSON document");
  if (!doc.is_object() || !doc.contains("rank") || !doc.contains("m"))
    throw ParseError("document must be an object with \"rank\" and \"m\"");
  if (!doc["rank"].is_number_integer() || doc["rank"].get<int>() < 1)
    throw ParseError("rank must be a positive integer");
  int rank = doc["rank"].get<int>();
  if (!doc["m"].is_array()) throw ParseError("m must be a rank x rank matrix");
  std::vector<std::vector<int>> orders;
  for (const auto& row : doc["m"]) {
    if (!row.is_array()) throw ParseError("m must be a rank x rank matrix");
    std::vector<int> r;
    for (const auto& entry : row) {
      if (entry.is_string()) {
        if (entry.get<std::string>() != "inf")
          throw ParseError("order entries must be integers >= 0 or \"inf\"");
        r.push_back(kInfiniteOrder);
      } else if (entry.is_number_integer() && entry.get<int>() >= 0) {
        r.push_back(entry.get<int>());
      } else {
        throw ParseError("order entries must be integers >= 0 or \"inf\"");
      }
    }
    orders.push_back(std::move(r));
  }
  return CoxeterMatrix(rank, orders);
}

Element reduce_reference(const Word& w, const CoxeterMatrix& m) {
  check_letters(w, m.rank());
  Word cur = w;
  for (;;) {
    std::vector<Word> closure = braid_closure(cur, m);
    bool deleted = false;
    for (const Word& v : closure) {
      if (auto shorter = delete_adjacent_pair(v)) {
        cur = std::move(*shorter);
        deleted = true;
        break;
      }
    }
    if (deleted) continue;
    // Everything in the closure is reduced; pick the ShortLex least.
    const Word* best = &closure.front();
    for (const Word& v : closure) {
      if (v < *best) best = &v;
    }
    return Element::from_normal_form(*best);
  }
}

Element reduce_fast(const Word& w, const CoxeterMatrix& m) {
  check_letters(w, m.rank());
  Engine eng(m);
  return Element::from_normal_form(eng.reduce_word(w));
}

Element reduce(const Word& w, const CoxeterMatrix& m) {
  try {
    return reduce_fast(w, m);
  } catch (const ToleranceError&) {
    return reduce_reference(w, m);
  }
}

std::vector<Word> reduced_words(const Element& g, const CoxeterMatrix& m) {
  std::vector<Word> words = braid_closure(g.word(), m);
  std::sort(words.begin(), words.end());
  return words;
}

int length(const Element& g) { return g.length(); }

Element multiply(const Element& a, const Element& b, const CoxeterMatrix& m) {
  Word w = a.word();
  w.insert(w.end(), b.word().begin(), b.word().end());
  return reduce(w, m);
}

Element inverse(const Element& g, const CoxeterMatrix& m) {
  Word w(g.word().rbegin(), g.word().rend());
  // The reversal of a reduced word is reduced; only canonicalize.
  try {
    Engine eng(m);
    return Element::from_normal_form(eng.canonicalize(std::move(w)));
  } catch (const ToleranceError&) {
    return reduce_reference(w, m);
  }
}

int distance(const Element& g, const Element& h, const CoxeterMatrix& m) {
  Word w(g.word().rbegin(), g.word().rend());
  w.insert(w.end(), h.word().begin(), h.word().end());
  try {
    Engine eng(m);
    Word r;
    std::vector<double> buf;
    for (int s : w) eng.append(r, s, buf);
    return static_cast<int>(r.size());
  } catch (const ToleranceError&) {
    return reduce_reference(w, m).length();
  }
}

std::string to_string(const Element& g) {
  std::string out;
  for (std::size_t i = 0; i < g.word().size(); ++i) {
    if (i) out += '.';
    out += 's';
    out += std::to_string(g.word()[i]);
  }
  return out;
}

Element parse_element(std::string_view text, const CoxeterMatrix& m) {
  Word w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string_view tok = text.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
    if (tok.size() < 2 || tok[0] != 's')
      throw ParseError("element tokens must look like \"s0\"");
    int idx = 0;
    for (char c : tok.substr(1)) {
      if (c < '0' || c > '9') throw ParseError("element tokens must look like \"s0\"");
      idx = idx * 10 + (c - '0');
    }
    if (idx >= m.rank()) throw ParseError("generator index out of range");
    w.push_back(idx);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
    if (pos == text.size()) throw ParseError("trailing '.' in element string");
  }
  return reduce(w, m);
}

Ball Ball::enumerate(const CoxeterMatrix& m, int radius, std::size_t cap) {
  if (radius < 0) throw Error("radius must be non-negative");
  Ball ball(m, radius);
  Engine eng(m);
  std::vector<double> buf;
  auto push = [&](Element e) {
    ball.index_.emplace(e, ball.elements_.size());
    ball.elements_.push_back(std::move(e));
  };
  push(Element());
  std::size_t level_begin = 0;
  for (int level = 1; level <= radius; ++level) {
    std::size_t level_end = ball.elements_.size();
    std::vector<Word> next;
    std::unordered_set<Word, WordHash> seen;
    for (std::size_t i = level_begin; i < level_end; ++i) {
      const Word& g = ball.elements_[i].word();
      for (int s = 0; s < m.rank(); ++s) {
        Word w = g;
        try {
          eng.append(w, s, buf);
          if (w.size() != g.size() + 1) continue;  // descent: stays inside
          w = eng.canonicalize(std::move(w));
        } catch (const ToleranceError&) {
          Word raw = g;
          raw.push_back(s);
          Element e = reduce_reference(raw, m);
          if (e.length() != static_cast<int>(g.size()) + 1) continue;
          w = e.word();
        }
        if (seen.insert(w).second) next.push_back(std::move(w));
      }
    }
    if (next.empty()) break;  // the whole (finite) group is exhausted
    if (ball.elements_.size() + next.size() > cap)
      throw CapError("ball cap exceeded at radius " + std::to_string(level) +
                         " (cap " + std::to_string(cap) + ")",
                     level - 1);
    std::sort(next.begin(), next.end());
    for (Word& w : next) push(Element::from_normal_form(std::move(w)));
    level_begin = level_end;
  }
  return ball;
}

std::optional<std::size_t> Ball::find(const Element& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> Ball::growth() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(radius_) + 1, 0);
  for (const Element& e : elements_) counts[static_cast<std::size_t>(e.length())]++;
  return counts;
}

}  // namespace coxrep
