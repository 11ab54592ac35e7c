#pragma once

// The sets N_g of reflections shortening a group element, the
// symmetric-difference distance identity, Gamma-orbit partitions of
// the reflection table, the initial-segment property and the family
// N^g = { N_g /\ N_u : u }.  Read-only after construction.

#include <cstdint>
#include <vector>

#include "coxrep/geometry.hpp"

namespace coxrep {

// Fixed-width bitset over the reflection table; bit positions follow
// the table's (length, ShortLex) order, so reports are reproducible.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  std::size_t count() const;

  Bitset operator&(const Bitset& o) const;
  Bitset operator^(const Bitset& o) const;
  friend bool operator==(const Bitset&, const Bitset&) = default;
  friend bool operator<(const Bitset& a, const Bitset& b) {
    return a.words_ < b.words_;
  }

  std::size_t hash() const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const noexcept { return b.hash(); }
};

// N_g = { t in T : l(tg) < l(g) }, ordered as w_1, w_1 w_2 w_1, ...
// along the normal form of g; |N_g| = l(g).
struct NSet {
  Element owner;
  std::vector<std::size_t> ordered;  // reflection-table indices
  Bitset members;
};

// Throws Error if a prefix conjugate falls outside the table
// (the table must come from a ball of radius >= 2 l(g) - 1).
NSet n_set(const Element& g, const ReflectionTable& table, const CoxeterMatrix& m);

// card(N_g symmetric-difference N_h); equals distance(g, h).
int sym_diff_distance(const Element& g, const Element& h, const ReflectionTable& table,
                      const CoxeterMatrix& m);

// Partition of the table into orbits of conjugation by the supplied
// Gamma generators (and their inverses).  Conjugates escaping the
// table are counted in `escaped` and otherwise ignored.
struct OrbitPartition {
  std::vector<Element> gamma;
  std::vector<std::vector<std::size_t>> classes;  // ordered by least member
  std::vector<int> class_of;                      // table index -> class id
  std::size_t escaped = 0;
  int count() const noexcept { return static_cast<int>(classes.size()); }
};

OrbitPartition orbit_partition(const ReflectionTable& table, const std::vector<Element>& gamma,
                               const CoxeterMatrix& m);

// true iff for every orbit class i, N_g^i /\ N_u is an initial segment
// of N_g^i in the order inherited from N_g.
bool initial_segment_check(const Element& g, const Element& u, const OrbitPartition& p,
                           const ReflectionTable& table, const CoxeterMatrix& m);

// Enumerates all reduced words of g and checks that the induced order
// on each N_g^i is independent of the word.  Throws CapError when
// l(g) exceeds the cap.
bool order_independence_check(const Element& g, const OrbitPartition& p,
                              const ReflectionTable& table, const CoxeterMatrix& m,
                              int cap = 8);

// Deduplicated family { N_g /\ N_u : u in ball } as bitsets, in
// deterministic (cardinality, bit-lex) order.
struct NgFamily {
  Element base;
  std::vector<Bitset> sets;
};

NgFamily n_g_family(const Element& g, const Ball& ball, const ReflectionTable& table,
                    const CoxeterMatrix& m);

}  // namespace coxrep
