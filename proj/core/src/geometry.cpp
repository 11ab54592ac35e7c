#include "coxrep/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace coxrep {

BilinearForm build_form(const CoxeterMatrix& m) {
  int n = m.rank();
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        b(i, j) = 1.0;
      } else {
        int o = m.order(i, j);
        b(i, j) = o == kInfiniteOrder ? -1.0 : -std::cos(std::numbers::pi / o);
      }
    }
  }
  return BilinearForm{std::move(b)};
}

RootVector apply_sigma(int s, const RootVector& x, const BilinearForm& form) {
  RootVector y = x;
  y(s) -= 2.0 * form.b.row(s).dot(x);
  return y;
}

RootVector apply_word(const Word& w, const RootVector& x, const BilinearForm& form) {
  RootVector y = x;
  for (int s : w) y(s) -= 2.0 * form.b.row(s).dot(y);
  return y;
}

int root_sign(const RootVector& x) {
  double lead = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) > std::abs(lead)) lead = x(i);
  }
  if (lead > kDescentTol) return 1;
  if (lead < -kDescentTol) return -1;
  throw ToleranceError("descent test inside the tolerance band");
}

bool is_descent(const Element& g, int s, const BilinearForm& form) {
  RootVector v = RootVector::Zero(form.rank());
  v(s) = 1.0;
  return root_sign(apply_word(g.word(), v, form)) < 0;
}

ReflectionTable ReflectionTable::enumerate(const Ball& ball) {
  const CoxeterMatrix& m = ball.matrix();
  BilinearForm form = build_form(m);
  ReflectionTable table;
  table.radius_ = ball.radius();
  for (const Element& u : ball.elements()) {
    for (int s = 0; s < m.rank(); ++s) {
      // t = u^-1 s u, kept only while it stays inside the ball.
      Word w(u.word().rbegin(), u.word().rend());
      w.push_back(s);
      w.insert(w.end(), u.word().begin(), u.word().end());
      Element t = reduce(w, m);
      if (t.length() > ball.radius()) continue;
      if (table.index_.contains(t)) continue;
      // Positive root of t: +/- sigma(u^-1) e_s, sign normalized.
      RootVector v = RootVector::Zero(m.rank());
      v(s) = 1.0;
      RootVector root = apply_word(u.word(), v, form);
      if (root_sign(root) < 0) root = -root;
      table.index_.emplace(t, 0);  // placeholder, fixed after sorting
      table.items_.push_back(Reflection{t, std::move(root)});
    }
  }
  std::sort(table.items_.begin(), table.items_.end(),
            [](const Reflection& a, const Reflection& b) { return a.element < b.element; });
  for (std::size_t i = 0; i < table.items_.size(); ++i)
    table.index_[table.items_[i].element] = i;
  return table;
}

std::optional<std::size_t> ReflectionTable::find(const Element& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace coxrep
