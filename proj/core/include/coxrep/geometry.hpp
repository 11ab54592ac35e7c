#pragma once

// The standard geometric representation sigma on E = R^rank: the
// cosine bilinear form, reflection action, descent tests and the
// enumeration of the reflections lying in a Cayley ball, each paired
// with its positive root.  Pure functions over immutable values.

#include <Eigen/Dense>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coxrep/coxeter.hpp"

namespace coxrep {

using RootVector = Eigen::VectorXd;

// B(e_i, e_j) = -cos(pi / m(i,j)) off the diagonal (-1 for infinite
// order), 1 on it.
struct BilinearForm {
  Eigen::MatrixXd b;
  int rank() const { return static_cast<int>(b.rows()); }
  double operator()(int i, int j) const { return b(i, j); }
};

BilinearForm build_form(const CoxeterMatrix& m);

// sigma(s) x = x - 2 B(e_s, x) e_s.
RootVector apply_sigma(int s, const RootVector& x, const BilinearForm& form);

// sigma(w_k)...sigma(w_1) x for w = w_1...w_k, i.e. sigma(g^-1) x with
// g the element of w; the letters are applied left to right.
RootVector apply_word(const Word& w, const RootVector& x, const BilinearForm& form);

// Sign of a +/- root; throws ToleranceError inside the decision band.
int root_sign(const RootVector& x);

// true iff l(sg) < l(g), by tracking sigma(w_k)...sigma(w_1) e_s.
bool is_descent(const Element& g, int s, const BilinearForm& form);

// A reflection t = u^-1 s u together with the positive root it negates.
struct Reflection {
  Element element;
  RootVector root;
};

// All reflections lying in a ball, deduplicated and ordered by
// (length, ShortLex); doubles as the bit-position table for NSet.
class ReflectionTable {
 public:
  static ReflectionTable enumerate(const Ball& ball);

  std::size_t size() const noexcept { return items_.size(); }
  const Reflection& at(std::size_t i) const { return items_.at(i); }
  const std::vector<Reflection>& items() const noexcept { return items_; }
  std::optional<std::size_t> find(const Element& t) const;
  int radius() const noexcept { return radius_; }

 private:
  std::vector<Reflection> items_;
  std::unordered_map<Element, std::size_t, ElementHash> index_;
  int radius_ = 0;
};

}  // namespace coxrep
