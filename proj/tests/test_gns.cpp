#include <cmath>
#include <complex>
#include <numbers>

#include "coxrep/gns.hpp"
#include "coxrep/presets.hpp"
#include "coxrep/rng.hpp"
#include "doctest.h"

using namespace coxrep;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gram matrices") {
  CoxeterMatrix iinf = load_preset("iinf").matrix;
  BallSpace point = BallSpace::build(Ball::enumerate(iinf, 0), 0.5);
  CHECK(point.dim() == 1);
  CHECK(point.gram()(0, 0) == 1.0);

  BallSpace space = BallSpace::build(Ball::enumerate(iinf, 1), 0.5);
  REQUIRE(space.dim() == 3);  // e, s, t with d(s,t) = 2
  Eigen::MatrixXd expected(3, 3);
  expected << 1.0, 0.5, 0.5, 0.5, 1.0, 0.25, 0.5, 0.25, 1.0;
  CHECK((space.gram() - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(space.min_eig() > 0.0);

  CHECK(space.inner(space.delta(0), space.delta(0)).real() == Approx(1.0));

  CHECK_THROWS_AS(BallSpace::build(Ball::enumerate(iinf, 1), 1.5), Error);

  // Prop 4.1 at the unit-test scale: strict positivity across presets.
  for (const char* name : {"a2", "b2", "iinf", "ra3"}) {
    CoxeterMatrix m = load_preset(name).matrix;
    Ball ball = Ball::enumerate(m, 3);
    for (double r : {0.3, 0.7}) {
      BallSpace s = BallSpace::build(ball, r);
      CHECK(s.min_eig() > 1e-12 * static_cast<double>(s.dim()));
    }
  }
}

TEST_CASE("diagonal cocycles") {
  CoxeterMatrix m = load_preset("iinf").matrix;
  BallSpace space = BallSpace::build(Ball::enumerate(m, 3), 0.5);
  Element s = reduce({0}, m);

  BallOperator trivial = cocycle_diag(s, s, std::polar(1.0, 0.7), space);
  for (const Complex& p : trivial.phase) CHECK(std::abs(p - Complex(1.0)) < 1e-15);
  BallOperator unit = cocycle_diag(Element(), s, Complex(1.0), space);
  for (const Complex& p : unit.phase) CHECK(std::abs(p - Complex(1.0)) < 1e-15);

  Complex theta = std::polar(1.0, 1.1);
  BallOperator c = cocycle_diag(Element(), s, theta, space);
  std::size_t at_s = *space.ball().find(s);
  CHECK(std::abs(c.phase[at_s] - theta) < 1e-14);  // l(s)-l(e) = 1
}

TEST_CASE("cocycle and equivariance identities") {
  for (const char* name : {"a2", "iinf", "ra3"}) {
    CoxeterMatrix m = load_preset(name).matrix;
    Ball dom_ball = Ball::enumerate(m, 3);
    BallSpace dom = BallSpace::build(dom_ball, 0.5);
    BallSpace cod = BallSpace::build(Ball::enumerate(m, 6), 0.5);
    SplitMix64 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
      const Element& u = dom_ball.at(rng.below(dom_ball.size()));
      const Element& g = dom_ball.at(rng.below(dom_ball.size()));
      const Element& v = dom_ball.at(rng.below(dom_ball.size()));
      for (Complex theta : {std::polar(1.0, kPi / 3.0), Complex(-1.0, 0.0)}) {
        CocycleCheck c = verify_cocycle_identities(u, g, v, theta, dom, cod);
        CHECK(c.pass);
      }
    }
  }
}

TEST_CASE("pi_z is monomial with the pinned coefficient") {
  CoxeterMatrix m = load_preset("iinf").matrix;
  BallSpace dom = BallSpace::build(Ball::enumerate(m, 2), 0.5);
  BallSpace cod = BallSpace::build(Ball::enumerate(m, 5), 0.5);

  BallOperator id = pi_z(Element(), Complex(0.5, 0.0), dom, dom);
  for (std::size_t i = 0; i < id.target.size(); ++i) {
    CHECK(id.target[i] == i);
    CHECK(std::abs(id.phase[i] - Complex(1.0)) < 1e-15);
  }

  Complex z = std::polar(0.5, kPi / 4.0);
  Element s = reduce({0}, m);
  BallOperator op = pi_z(s, z, dom, cod);
  // pi_z(s) delta_e = theta delta_s.
  std::size_t at_e = *dom.ball().find(Element());
  CHECK(op.target[at_e] == *cod.ball().find(s));
  CHECK(std::abs(op.phase[at_e] - z / std::abs(z)) < 1e-14);

  // Monomial structure: unimodular entries, one per column.
  for (const Complex& p : op.phase) CHECK(std::abs(std::abs(p) - 1.0) < 1e-14);

  // <pi_z(g) delta_e, delta_e>_r = z^{l(g)}.
  for (const Element& g : dom.ball().elements()) {
    for (int k = 0; k < 8; ++k) {
      Complex zk = std::polar(0.5, 2.0 * kPi * k / 8.0);
      BallOperator pg = pi_z(g, zk, dom, cod);
      Complex coeff = cod.inner(pg.apply(dom.delta(at_e)), cod.delta(*cod.ball().find(Element())));
      CHECK(std::abs(coeff - std::pow(zk, g.length())) < 1e-12);
    }
  }

  CHECK_THROWS_AS(pi_z(reduce({0, 1, 0, 1}, m), z, dom, dom), Error);  // ball overflow
}

TEST_CASE("composition on vectors that stay inside") {
  CoxeterMatrix m = load_preset("b2").matrix;
  BallSpace dom = BallSpace::build(Ball::enumerate(m, 2), 0.7);
  BallSpace mid = BallSpace::build(Ball::enumerate(m, 4), 0.7);
  BallSpace cod = BallSpace::build(Ball::enumerate(m, 6), 0.7);
  Complex z = std::polar(0.7, 1.3);
  SplitMix64 rng(9);
  Ball small = Ball::enumerate(m, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const Element& g = small.at(rng.below(small.size()));
    const Element& h = small.at(rng.below(small.size()));
    const Element& u = small.at(rng.below(small.size()));
    Eigen::VectorXcd lhs =
        pi_z(g, z, mid, cod).apply(pi_z(h, z, dom, mid).apply(dom.delta(*dom.ball().find(u))));
    Eigen::VectorXcd rhs = pi_z(multiply(g, h, m), z, dom, cod).apply(dom.delta(*dom.ball().find(u)));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("restricted norms") {
  CoxeterMatrix m = load_preset("iinf").matrix;
  BallSpace dom = BallSpace::build(Ball::enumerate(m, 3), 0.5);
  BallSpace cod = BallSpace::build(Ball::enumerate(m, 6), 0.5);

  CHECK(restricted_norm(pi_z(Element(), Complex(0.5, 0.0), dom, dom)) == Approx(1.0));

  // Real z: pi_r(g) is isometric, the twist is trivial.
  Ball three = Ball::enumerate(m, 3);
  for (const Element& g : three.elements()) {
    CHECK(restricted_norm(pi_z(g, Complex(0.5, 0.0), dom, cod)) <= 1.0 + 1e-9);
  }

  // A twisted norm exceeds 1 but stays under the theorem bound.
  Element s = reduce({0}, m);
  double norm = restricted_norm(pi_z(s, std::polar(0.5, kPi / 4.0), dom, cod));
  CHECK(norm > 1.0);
  CHECK(norm <= theorem_bound(std::polar(0.5, kPi / 4.0), 2.0) * (1.0 + 1e-8));
}

TEST_CASE("theorem bound values") {
  CHECK(theorem_bound(Complex(0.5, 0.0), 1.0) == 1.0);
  CHECK(theorem_bound(Complex(0.0, 0.5), 1.0) ==
        Approx(1.0 + 2.0 * kPi / std::abs(std::log(0.5))));
  CHECK(theorem_bound(std::polar(0.5, kPi / 4.0), 2.0) ==
        Approx(1.0 + kPi / (2.0 * std::abs(std::log(0.5)))));
  CHECK_THROWS_AS(theorem_bound(Complex(0.5, 0.0), 0.0), Error);
  CHECK_THROWS_AS(theorem_bound(Complex(2.0, 0.0), 1.0), Error);
}

TEST_CASE("kappa search") {
  CoxeterMatrix m = load_preset("iinf").matrix;
  Ball family_ball = Ball::enumerate(m, 4);
  ReflectionTable table = ReflectionTable::enumerate(Ball::enumerate(m, 9));

  // Identity: the single-set family puts no constraint on kappa.
  KappaEstimate id = kappa_search(Element(), 0.5, family_ball, table, m);
  CHECK(id.found);
  CHECK(id.family_size == 1);
  CHECK(id.kappa_min_grid == 8.0);

  // g = s: 2x2 family {{}, {s}} with determinant r^kappa - r^2, so the
  // PSD region is exactly kappa <= 2 for every r.
  Element s = reduce({0}, m);
  KappaEstimate est = kappa_search(s, 0.5, family_ball, table, m);
  REQUIRE(est.found);
  CHECK(est.family_size == 2);
  CHECK(est.kappa_min_grid == Approx(2.0).epsilon(1e-3));
  NgFamily fam = n_g_family(s, family_ball, table, m);
  for (double kappa : {0.25, 1.0, 1.75, 2.5, 4.0}) {
    double det = std::pow(0.5, kappa) - 0.25;
    bool pass = psd_check(kappa_kernel(fam, 0.5, kappa), 1e-9).pass;
    CHECK(pass == (det >= -1e-9));
  }

  // Lemma route: kernel PSD at kappa = 2 mu'(r, Lambda) for a longer g.
  Element g4 = reduce({0, 1, 0, 1}, m);
  KappaEstimate lem = kappa_search(g4, 0.5, family_ball, table, m, 2);
  REQUIRE(lem.found);
  REQUIRE(lem.kappa_lemma.has_value());
  CHECK(*lem.kappa_lemma == Approx(2.0 * mu_prime_search(0.5, 2).mu_prime));
  CHECK(lem.lemma_psd);
  CHECK(lem.kappa_min_grid >= *lem.kappa_lemma);
}

TEST_CASE("norm sweep passes the uniform bound") {
  NormSweepConfig config;
  config.g_max = 2;
  config.r_values = {0.5};
  config.arg_steps = 8;
  config.domain_radius = 2;
  config.codomain_radius = 4;
  NormSweepResult result =
      verify_theorem_4_4(load_preset("iinf").matrix, config, load_preset("iinf").gamma);
  CHECK(result.pass);
  CHECK(!result.rows.empty());
  for (const NormCheckRow& row : result.rows) {
    CHECK(row.norm <= row.bound * (1.0 + 1e-8));
    if (std::abs(std::arg(row.z * row.z)) < 1e-12) CHECK(row.norm <= 1.0 + 1e-9);
  }
}

TEST_CASE("intertwiners") {
  CoxeterMatrix m = load_preset("a2").matrix;
  BallSpace dom = BallSpace::build(Ball::enumerate(m, 3), 0.6);
  BallSpace cod = BallSpace::build(Ball::enumerate(m, 6), 0.6);
  SplitMix64 rng(3);
  for (const Element& g : dom.ball().elements()) {
    for (int trial = 0; trial < 4; ++trial) {
      Complex z = std::polar(0.6, rng.uniform(-kPi, kPi));
      IntertwinerCheck c = verify_intertwiners(g, z, dom, cod);
      CHECK(c.pass);
    }
    // Real z: pi_z and pi_zbar coincide.
    IntertwinerCheck real_case = verify_intertwiners(g, Complex(0.6, 0.0), dom, cod);
    CHECK(real_case.conj_err == 0.0);
  }
}
