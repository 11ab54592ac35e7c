#include "coxrep/reflection_sets.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

namespace coxrep {

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

Bitset Bitset::operator&(const Bitset& o) const {
  Bitset out(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & o.words_[i];
  return out;
}

Bitset Bitset::operator^(const Bitset& o) const {
  Bitset out(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] ^ o.words_[i];
  return out;
}

std::size_t Bitset::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint64_t w : words_) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

namespace {

// Reflection-table indices of w_1, w_1 w_2 w_1, ... along the word w.
std::vector<std::size_t> prefix_conjugate_indices(const Word& w, const ReflectionTable& table,
                                                  const CoxeterMatrix& m) {
  std::vector<std::size_t> out;
  out.reserve(w.size());
  for (std::size_t k = 1; k <= w.size(); ++k) {
    Word pal(w.begin(), w.begin() + static_cast<long>(k));
    pal.insert(pal.end(), w.rend() - static_cast<long>(k) + 1, w.rend());
    Element t = reduce(pal, m);
    auto idx = table.find(t);
    if (!idx)
      throw Error("reflection table too small: need radius >= 2 l(g) - 1, got " +
                  std::to_string(table.radius()));
    out.push_back(*idx);
  }
  return out;
}

Element conjugate(const Element& t, const Element& a, const CoxeterMatrix& m) {
  Word w(a.word().rbegin(), a.word().rend());
  w.insert(w.end(), t.word().begin(), t.word().end());
  w.insert(w.end(), a.word().begin(), a.word().end());
  return reduce(w, m);
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

NSet n_set(const Element& g, const ReflectionTable& table, const CoxeterMatrix& m) {
  NSet out;
  out.owner = g;
  out.ordered = prefix_conjugate_indices(g.word(), table, m);
  out.members = Bitset(table.size());
  for (std::size_t idx : out.ordered) out.members.set(idx);
  return out;
}

int sym_diff_distance(const Element& g, const Element& h, const ReflectionTable& table,
                      const CoxeterMatrix& m) {
  return static_cast<int>((n_set(g, table, m).members ^ n_set(h, table, m).members).count());
}

OrbitPartition orbit_partition(const ReflectionTable& table, const std::vector<Element>& gamma,
                               const CoxeterMatrix& m) {
  OrbitPartition p;
  p.gamma = gamma;
  UnionFind uf(table.size());
  for (const Element& g : gamma) {
    if (g.is_identity()) continue;
    const Element gi = inverse(g, m);
    for (std::size_t i = 0; i < table.size(); ++i) {
      for (const Element& a : {g, gi}) {
        Element t = conjugate(table.at(i).element, a, m);
        if (auto j = table.find(t)) {
          uf.unite(i, *j);
        } else {
          p.escaped++;
        }
      }
    }
  }
  p.class_of.assign(table.size(), -1);
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::size_t root = uf.find(i);
    if (p.class_of[root] < 0) {
      p.class_of[root] = static_cast<int>(p.classes.size());
      p.classes.emplace_back();
    }
    p.class_of[i] = p.class_of[root];
    p.classes[static_cast<std::size_t>(p.class_of[i])].push_back(i);
  }
  return p;
}

bool initial_segment_check(const Element& g, const Element& u, const OrbitPartition& p,
                           const ReflectionTable& table, const CoxeterMatrix& m) {
  NSet ng = n_set(g, table, m);
  NSet nu = n_set(u, table, m);
  std::vector<char> blocked(static_cast<std::size_t>(p.count()), 0);
  for (std::size_t idx : ng.ordered) {
    auto c = static_cast<std::size_t>(p.class_of[idx]);
    if (nu.members.test(idx)) {
      if (blocked[c]) return false;
    } else {
      blocked[c] = 1;
    }
  }
  return true;
}

bool order_independence_check(const Element& g, const OrbitPartition& p,
                              const ReflectionTable& table, const CoxeterMatrix& m, int cap) {
  if (g.length() > cap)
    throw CapError("order-independence cap exceeded for l(g) = " + std::to_string(g.length()),
                   cap);
  std::vector<std::vector<std::size_t>> reference;  // per class
  bool first = true;
  for (const Word& w : reduced_words(g, m)) {
    std::vector<std::vector<std::size_t>> per_class(static_cast<std::size_t>(p.count()));
    for (std::size_t idx : prefix_conjugate_indices(w, table, m))
      per_class[static_cast<std::size_t>(p.class_of[idx])].push_back(idx);
    if (first) {
      reference = std::move(per_class);
      first = false;
    } else if (per_class != reference) {
      return false;
    }
  }
  return true;
}

NgFamily n_g_family(const Element& g, const Ball& ball, const ReflectionTable& table,
                    const CoxeterMatrix& m) {
  NgFamily fam;
  fam.base = g;
  NSet ng = n_set(g, table, m);
  std::unordered_set<Bitset, BitsetHash> seen;
  for (const Element& u : ball.elements()) {
    Bitset inter = ng.members & n_set(u, table, m).members;
    if (seen.insert(inter).second) fam.sets.push_back(std::move(inter));
  }
  std::sort(fam.sets.begin(), fam.sets.end(), [](const Bitset& a, const Bitset& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a < b;
  });
  return fam;
}

}  // namespace coxrep
