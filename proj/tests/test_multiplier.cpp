#include <cmath>
#include <numbers>

#include "coxrep/multiplier.hpp"
#include "coxrep/presets.hpp"
#include "doctest.h"

using namespace coxrep;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
}

TEST_CASE("shell coefficients by quadrature") {
  CoxeterMatrix m = load_preset("iinf").matrix;
  CHECK(std::abs(chi_coefficient(Element(), 0, 0.5, 64, m) - Complex(1.0)) < 1e-12);
  CHECK(std::abs(chi_coefficient(Element(), 1, 0.5, 64, m)) < 1e-12);

  Element st = reduce({0, 1}, m);
  CHECK(std::abs(chi_coefficient(st, 2, 0.5, 64, m) - Complex(0.25)) < 1e-12);

  // r^n [n = l(g)] across a ball.
  Ball ball = Ball::enumerate(m, 6);
  for (const Element& g : ball.elements()) {
    for (int n = 0; n <= 8; ++n) {
      Complex expected = n == g.length() ? Complex(std::pow(0.5, n)) : Complex(0.0);
      CHECK(std::abs(chi_coefficient(g, n, 0.5, 64, m) - expected) < 1e-12);
    }
  }

  CHECK_THROWS_AS(chi_coefficient(Element(), 20, 0.5, 64, m), Error);
}

TEST_CASE("shell multiplier bound") {
  CHECK(char_bound(0, 1.0) == Approx(2.0 * kPi * kE));
  CHECK(char_bound(0, 7.5) == Approx(2.0 * kPi * kE));
  CHECK(char_bound(1, 1.0) == Approx(2.0 * kPi * kE * (1.0 + 4.0 * kPi)));
  // Affine in n.
  for (int n : {1, 3, 10}) {
    CHECK(char_bound(2 * n, 0.7) - char_bound(n, 0.7) ==
          Approx(char_bound(3 * n, 0.7) - char_bound(2 * n, 0.7)));
  }
  CHECK_THROWS_AS(char_bound(1, 0.0), Error);
}

TEST_CASE("fejer kernel") {
  FejerWeights w = fejer_weights(4);
  CHECK(w.w[0] == 1.0);
  for (std::size_t k = 1; k < w.w.size(); ++k) {
    CHECK(w.w[k] > 0.0);
    CHECK(w.w[k] < w.w[k - 1]);
  }

  CHECK(fejer_eval(0, 1.234) == Approx(1.0));
  for (int n : {1, 5, 32, 256}) CHECK(fejer_eval(n, 0.0) == Approx(n + 1.0));

  // Non-negativity on a grid, against the closed form.
  for (int n : {1, 2, 16, 101, 256}) {
    double lowest = 1e300;
    double worst_gap = 0.0;
    for (int k = 0; k < 4096; ++k) {
      double t = 2.0 * kPi * k / 4096.0;
      double direct = fejer_eval(n, t);
      lowest = std::min(lowest, direct);
      worst_gap = std::max(worst_gap, std::abs(direct - fejer_closed_form(n, t)));
    }
    CHECK(lowest >= -1e-10);
    CHECK(worst_gap < 1e-8);
    // Unit mean, computed exactly by trapezoidal quadrature.
    double mean = 0.0;
    int quad = 1024;
    for (int k = 0; k < quad; ++k) mean += fejer_eval(n, 2.0 * kPi * k / quad);
    CHECK(mean / quad == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fejer smoothing closed form vs quadrature") {
  CoxeterMatrix m = load_preset("iinf").matrix;
  CHECK(psi_nr(Element(), 10, 0.9) == 1.0);
  CHECK(psi_nr(11, 10, 0.9) == 0.0);   // weight vanishes at l = N+1
  CHECK(psi_nr(2, 9, 0.9) == Approx(0.8 * 0.81));

  Ball ball = Ball::enumerate(m, 5);
  for (const Element& g : ball.elements()) {
    for (int order : {3, 9, 24}) {
      for (double r : {0.5, 0.9}) {
        double closed = psi_nr(g, order, r);
        double quad = psi_nr_quadrature(g, order, r, 128, m);
        CHECK(closed == Approx(quad).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("approximate identity schedule") {
  CoxeterMatrix m = load_preset("iinf").matrix;
  Ball point = Ball::enumerate(m, 0);
  auto trivial = approximate_identity_demo(point, {{10, 0.9}});
  CHECK(trivial[0].sup_dev == 0.0);

  Ball ball = Ball::enumerate(m, 10);
  auto pair = approximate_identity_demo(ball, {{10, 0.9}, {100, 0.99}});
  CHECK(pair[1].sup_dev < pair[0].sup_dev);

  // The deviation is monotone in the length, so the sup sits at l = R.
  auto entries = approximate_identity_demo(ball, {{10, 0.9}, {50, 0.98}, {200, 0.995}});
  for (const DemoEntry& e : entries) {
    CHECK(e.argmax_len == 10);
    double by_hand = std::abs(1.0 - psi_nr(10, e.order, e.r));
    CHECK(e.sup_dev == Approx(by_hand).epsilon(1e-14));
  }
  CHECK(entries[0].sup_dev > entries[1].sup_dev);
  CHECK(entries[1].sup_dev > entries[2].sup_dev);
  // Final value pinned by the closed form (1 - 10/201) 0.995^10.
  double closed = 1.0 - (1.0 - 10.0 / 201.0) * std::pow(0.995, 10);
  CHECK(entries[2].sup_dev == Approx(closed).epsilon(1e-10));

  CHECK_THROWS_AS(approximate_identity_demo(ball, {}), Error);
}

TEST_CASE("series tail bound") {
  CHECK(series_tail_bound(Complex(0.0), 1, 2.0) == 0.0);
  CHECK(series_tail_bound(Complex(0.5, 0.0), 0, 1.0) ==
        Approx(2.0 * kPi * kE * (2.0 + 8.0 * kPi)));
  double prev = series_tail_bound(Complex(0.3, 0.4), 0, 1.0);
  for (int n0 : {1, 2, 5, 10, 30}) {
    double next = series_tail_bound(Complex(0.3, 0.4), n0, 1.0);
    CHECK(next < prev);
    prev = next;
  }
  CHECK(prev < 1e-3);
  CHECK_THROWS_AS(series_tail_bound(Complex(1.0, 0.0), 0, 1.0), Error);
}
