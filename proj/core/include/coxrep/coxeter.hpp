#pragma once

// Coxeter presentations, words, canonical (ShortLex) normal forms and
// Cayley-ball enumeration.  All types are immutable values after
// construction and every free function is pure, so concurrent use from
// any number of threads is safe.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coxrep {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration / input documents that do not conform to the schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

// The floating point descent test landed inside the ambiguity band
// around zero.  Callers fall back to reduce_reference().
class ToleranceError : public Error {
 public:
  using Error::Error;
};

// An enumeration exceeded its configured cap.  `reached` is the last
// radius that was completed.
class CapError : public Error {
 public:
  CapError(const std::string& what, int reached) : Error(what), reached_(reached) {}
  int reached() const noexcept { return reached_; }

 private:
  int reached_ = 0;
};

// Order value encoding m(s,t) = infinity.
inline constexpr int kInfiniteOrder = 0;

// Decision tolerance of the root-sign descent tests.
inline constexpr double kDescentTol = 1e-9;

// The presentation data: rank and the symmetric matrix of orders
// m(s,t), with 1 on the diagonal and entries >= 2 (or infinity,
// encoded as 0) off it.  Single source of truth for a group.
class CoxeterMatrix {
 public:
  CoxeterMatrix(int rank, const std::vector<std::vector<int>>& orders);

  // Parses the JSON document {"rank": n, "m": [[...]]} where the order
  // infinity is written as 0 or "inf".  Throws ParseError with a
  // distinct diagnostic per schema violation.
  static CoxeterMatrix parse(std::string_view text);

  int rank() const noexcept { return rank_; }
  // 0 means infinity.
  int order(int i, int j) const { return m_[static_cast<std::size_t>(i) * rank_ + j]; }
  bool finite(int i, int j) const { return order(i, j) != kInfiniteOrder; }

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  int rank_;
  std::vector<int> m_;
};

// A word over the generators; entries are indices in [0, rank).
// Words need not be reduced.
using Word = std::vector<int>;

// A group element, stored as its ShortLex-least reduced word.
class Element {
 public:
  Element() = default;  // the identity (empty word)

  const Word& word() const noexcept { return word_; }
  int length() const noexcept { return static_cast<int>(word_.size()); }
  bool is_identity() const noexcept { return word_.empty(); }

  // Trusted constructor: `w` must already be the canonical normal form.
  static Element from_normal_form(Word w) { return Element(std::move(w)); }

  friend bool operator==(const Element&, const Element&) = default;
  // ShortLex: first by length, then lexicographically.
  friend bool operator<(const Element& a, const Element& b) {
    if (a.word_.size() != b.word_.size()) return a.word_.size() < b.word_.size();
    return a.word_ < b.word_;
  }

 private:
  explicit Element(Word w) : word_(std::move(w)) {}
  Word word_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int s : e.word()) {
      h ^= static_cast<std::uint64_t>(s) + 1;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// Tits' solution to the word problem: exhaustive closure under braid
// moves and deletion of adjacent equal letters.  Total, but worst-case
// exponential; used as the reference oracle.
Element reduce_reference(const Word& w, const CoxeterMatrix& m);

// Normal form via root tracking in the geometric representation;
// O(len(w)^2 * rank) arithmetic.  Throws ToleranceError if a descent
// test is ambiguous (callers then fall back to reduce_reference).
Element reduce_fast(const Word& w, const CoxeterMatrix& m);

// reduce_fast with automatic fallback to reduce_reference.
Element reduce(const Word& w, const CoxeterMatrix& m);

// All reduced words of g (braid-move closure of the normal form).
std::vector<Word> reduced_words(const Element& g, const CoxeterMatrix& m);

int length(const Element& g);
Element multiply(const Element& a, const Element& b, const CoxeterMatrix& m);
Element inverse(const Element& g, const CoxeterMatrix& m);
// Word metric d(g,h) = l(g^-1 h).
int distance(const Element& g, const Element& h, const CoxeterMatrix& m);

// Serialization: "s0.s1.s0"; the empty string is the identity.
std::string to_string(const Element& g);
Element parse_element(std::string_view text, const CoxeterMatrix& m);

// The ball {g : l(g) <= radius}, sorted by (length, ShortLex), closed
// under taking prefixes of normal forms.
class Ball {
 public:
  static Ball enumerate(const CoxeterMatrix& m, int radius,
                        std::size_t cap = kDefaultCap);

  static constexpr std::size_t kDefaultCap = 200000;

  int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const Element& at(std::size_t i) const { return elements_.at(i); }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::optional<std::size_t> find(const Element& g) const;
  bool contains(const Element& g) const { return find(g).has_value(); }
  const CoxeterMatrix& matrix() const noexcept { return matrix_; }

  // Number of elements of each length 0..radius.
  std::vector<std::size_t> growth() const;

 private:
  Ball(CoxeterMatrix m, int radius) : matrix_(std::move(m)), radius_(radius) {}
  CoxeterMatrix matrix_;
  int radius_;
  std::vector<Element> elements_;
  std::unordered_map<Element, std::size_t, ElementHash> index_;
};

}  // namespace coxrep
