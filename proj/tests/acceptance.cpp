// Acceptance suite: every headline property at its stated tolerance,
// one pass/fail line per criterion.  Exit code is the failure count.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "coxrep/gns.hpp"
#include "coxrep/multiplier.hpp"
#include "coxrep/presets.hpp"
#include "coxrep/rng.hpp"

using namespace coxrep;

namespace {

constexpr double kPi = std::numbers::pi;

struct Runner {
  int failures = 0;

  void run(const std::string& name, const std::function<bool(std::string&)>& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %-34s %6.2fs  %s\n", ok ? "PASS" : "FAIL", name.c_str(), seconds,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

template <typename Fn>
void for_each_word(int rank, int n, Fn&& fn) {
  Word w(static_cast<std::size_t>(n), 0);
  for (;;) {
    fn(w);
    int i = n - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == rank - 1) {
      w[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) return;
    w[static_cast<std::size_t>(i)]++;
  }
}

const std::vector<std::string>& all_presets() {
  static const std::vector<std::string> names = preset_names();
  return names;
}

}  // namespace

int main() {
  Runner runner;

  runner.run("word-problem oracle equivalence", [](std::string& detail) {
    std::size_t words = 0;
    bool ok = true;
    for (const char* name : {"a2", "b2", "iinf", "ra3"}) {
      CoxeterMatrix m = load_preset(name).matrix;
      for (int n = 0; n <= 8; ++n) {
        for_each_word(m.rank(), n, [&](const Word& w) {
          ++words;
          if (!(reduce_fast(w, m) == reduce_reference(w, m))) ok = false;
        });
      }
    }
    detail = std::to_string(words) + " words, exact agreement";
    return ok;
  });

  runner.run("|N_g| = l(g) on radius-4 balls", [](std::string& detail) {
    std::size_t cases = 0;
    bool ok = true;
    for (const std::string& name : all_presets()) {
      CoxeterMatrix m = load_preset(name).matrix;
      ReflectionTable table = ReflectionTable::enumerate(Ball::enumerate(m, 7));
      Ball ball = Ball::enumerate(m, 4);
      for (const Element& g : ball.elements()) {
        ++cases;
        NSet ns = n_set(g, table, m);
        if (static_cast<int>(ns.ordered.size()) != g.length() ||
            ns.members.count() != static_cast<std::size_t>(g.length()))
          ok = false;
      }
    }
    detail = std::to_string(cases) + " elements across " +
             std::to_string(all_presets().size()) + " presets";
    return ok;
  });

  runner.run("distance identity d = |N_g xor N_h|", [](std::string& detail) {
    std::size_t pairs = 0;
    bool ok = true;
    for (const std::string& name : all_presets()) {
      CoxeterMatrix m = load_preset(name).matrix;
      ReflectionTable table = ReflectionTable::enumerate(Ball::enumerate(m, 5));
      Ball ball = Ball::enumerate(m, 3);
      for (const Element& g : ball.elements()) {
        for (const Element& h : ball.elements()) {
          ++pairs;
          if (sym_diff_distance(g, h, table, m) != distance(g, h, m)) ok = false;
        }
      }
    }
    detail = std::to_string(pairs) + " pairs, exact";
    return ok;
  });

  runner.run("discrete multiplier sweep", [](std::string& detail) {
    SplitMix64 rng(42);
    bool ok = true;
    std::size_t checks = 0, first_power = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      DiscreteFn f;
      int support = 1 + static_cast<int>(rng.below(20));
      for (int i = 0; i < support; ++i)
        f.set(static_cast<int>(rng.below(40)), {rng.uniform(-1, 1), rng.uniform(-1, 1)});
      for (int k = 0; k < 16; ++k) {
        for (double alpha : {1.5, std::numbers::e, 4.0}) {
          MultiplierCheck c = verify_theorem_2_2(f, std::polar(1.0, k * kPi / 8.0), alpha);
          ++checks;
          if (!c.pass) ok = false;
          if (c.first_power_pass) ++first_power;
        }
      }
    }
    detail = std::to_string(checks) + " checks at C^2; first-power compliance " +
             std::to_string(first_power) + "/" + std::to_string(checks);
    return ok;
  });

  runner.run("fourier positivity certificates", [](std::string& detail) {
    MuCertificate mu = mu_search(0.5);
    MuPrimeCertificate mup = mu_prime_search(0.5, 2);
    bool ok = mu.found && mu.mu >= std::ldexp(1.0, -12) && mu.tail < 1e-12 &&
              mu.margin() > 0.0;
    // Positivity survives a 16x grid refinement.
    if (ok) ok = psi_mu_grid_min(0.5, mu.mu, 16 * mu.grid_points) - mu.tail > 0.0;
    ok = ok && mup.found && mup.mu_prime >= std::ldexp(1.0, -12) &&
         mup.dominating_sum < mup.psi0_min;
    if (ok) ok = psi_mu_prime_grid_min_2d(0.5, mup.mu_prime, 256) > 0.0 &&
                 psi_mu_prime_grid_min_2d(0.5, mup.mu_prime, 1024) > 0.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "mu=%g (margin %.3g), mu'=%g (slack %.3g)", mu.mu,
                  mu.margin(), mup.mu_prime, mup.psi0_min - mup.dominating_sum);
    detail = buf;
    return ok;
  });

  runner.run("gram positive definiteness", [](std::string& detail) {
    bool ok = true;
    double worst = 1e300;
    for (const std::string& name : all_presets()) {
      Ball ball = Ball::enumerate(load_preset(name).matrix, 4);
      for (double r : {0.3, 0.5, 0.7, 0.9}) {
        BallSpace space = BallSpace::build(ball, r);
        double threshold = 1e-12 * static_cast<double>(space.dim());
        worst = std::min(worst, space.min_eig());
        if (!(space.min_eig() > threshold)) ok = false;
      }
    }
    char buf[80];
    std::snprintf(buf, sizeof buf, "smallest eigenvalue %.3g", worst);
    detail = buf;
    return ok;
  });

  runner.run("coefficient identity z^l", [](std::string& detail) {
    bool ok = true;
    double worst = 0.0;
    std::size_t cases = 0;
    for (const std::string& name : all_presets()) {
      CoxeterMatrix m = load_preset(name).matrix;
      Ball point = Ball::enumerate(m, 0);
      Ball ball = Ball::enumerate(m, 4);
      for (double r : {0.5, 0.8}) {
        BallSpace dom = BallSpace::build(point, r);
        BallSpace cod = BallSpace::build(ball, r);
        std::size_t e_at = *cod.ball().find(Element());
        for (const Element& g : ball.elements()) {
          for (int k = 0; k < 8; ++k) {
            Complex z = std::polar(r, 2.0 * kPi * k / 8.0);
            Complex coeff = cod.inner(pi_z(g, z, dom, cod).apply(dom.delta(0)),
                                      cod.delta(e_at));
            double err = std::abs(coeff - std::pow(z, g.length()));
            worst = std::max(worst, err);
            ++cases;
            if (err > 1e-12) ok = false;
          }
        }
      }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu coefficients, worst error %.2e", cases, worst);
    detail = buf;
    return ok;
  });

  runner.run("uniform norm bound (theorem sweep)", [](std::string& detail) {
    bool ok = true;
    double worst_ratio = 0.0;
    std::size_t rows = 0;
    for (const char* name : {"iinf", "a2", "b2", "ra3"}) {
      Preset preset = load_preset(name);
      NormSweepConfig config;  // g_max 3, r {0.5,0.8}, 16 args, radii 3/6
      NormSweepResult result = verify_theorem_4_4(preset.matrix, config, preset.gamma);
      rows += result.rows.size();
      if (!result.pass) ok = false;
      for (const NormCheckRow& row : result.rows)
        worst_ratio = std::max(worst_ratio, row.ratio);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu (g,z) pairs, worst norm/bound %.4f", rows, worst_ratio);
    detail = buf;
    return ok;
  });

  runner.run("cocycle identities and intertwiners", [](std::string& detail) {
    bool ok = true;
    std::size_t triples = 0;
    SplitMix64 rng(42);
    for (const std::string& name : all_presets()) {
      CoxeterMatrix m = load_preset(name).matrix;
      Ball dom_ball = Ball::enumerate(m, 3);
      BallSpace dom = BallSpace::build(dom_ball, 0.5);
      BallSpace cod = BallSpace::build(Ball::enumerate(m, 6), 0.5);
      for (int trial = 0; trial < 200; ++trial) {
        const Element& u = dom_ball.at(rng.below(dom_ball.size()));
        const Element& g = dom_ball.at(rng.below(dom_ball.size()));
        const Element& v = dom_ball.at(rng.below(dom_ball.size()));
        Complex theta = rng.unit_complex();
        ++triples;
        if (!verify_cocycle_identities(u, g, v, theta, dom, cod).pass) ok = false;
        if (!verify_intertwiners(g, theta * 0.5, dom, cod).pass) ok = false;
      }
    }
    detail = std::to_string(triples) + " random triples, entrywise 1e-12";
    return ok;
  });

  runner.run("shell coefficients r^n [n = l]", [](std::string& detail) {
    bool ok = true;
    double worst = 0.0;
    std::size_t cases = 0;
    for (const std::string& name : all_presets()) {
      CoxeterMatrix m = load_preset(name).matrix;
      Ball ball = Ball::enumerate(m, 6);
      for (const Element& g : ball.elements()) {
        for (int n = 0; n <= 8; ++n) {
          Complex expected =
              n == g.length() ? Complex(std::pow(0.5, n)) : Complex(0.0);
          double err = std::abs(chi_coefficient(g, n, 0.5, 64, m) - expected);
          worst = std::max(worst, err);
          ++cases;
          if (err > 1e-12) ok = false;
        }
      }
    }
    if (std::abs(char_bound(0, 1.0) - 2.0 * kPi * std::numbers::e) >
        1e-12 * 2.0 * kPi * std::numbers::e)
      ok = false;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu coefficients, worst error %.2e", cases, worst);
    detail = buf;
    return ok;
  });

  runner.run("fejer kernel and approximate identity", [](std::string& detail) {
    bool ok = true;
    double lowest = 1e300;
    for (int n = 0; n <= 256; ++n) {
      double mean = 0.0;
      for (int k = 0; k < 4096; ++k) {
        double v = fejer_eval(n, 2.0 * kPi * k / 4096.0);
        lowest = std::min(lowest, v);
        mean += v;
      }
      if (lowest < -1e-10) ok = false;
      if (std::abs(mean / 4096.0 - 1.0) > 1e-12) ok = false;
    }
    Ball ball = Ball::enumerate(load_preset("iinf").matrix, 10);
    auto entries = approximate_identity_demo(ball, {{10, 0.9}, {50, 0.98}, {200, 0.995}});
    if (!(entries[0].sup_dev > entries[1].sup_dev && entries[1].sup_dev > entries[2].sup_dev))
      ok = false;
    double closed = 1.0 - (1.0 - 10.0 / 201.0) * std::pow(0.995, 10);
    if (std::abs(entries[2].sup_dev - closed) > 1e-10) ok = false;
    char buf[120];
    std::snprintf(buf, sizeof buf, "min F_N %.2e; schedule %.4f > %.4f > %.4f (= closed form)",
                  lowest, entries[0].sup_dev, entries[1].sup_dev, entries[2].sup_dev);
    detail = buf;
    return ok;
  });

  runner.run("initial segments in the orbit order", [](std::string& detail) {
    Preset iinf = load_preset("iinf");
    ReflectionTable table =
        ReflectionTable::enumerate(Ball::enumerate(iinf.matrix, 11));
    OrbitPartition orbits = orbit_partition(table, iinf.gamma, iinf.matrix);
    Ball ball = Ball::enumerate(iinf.matrix, 6);
    bool ok = orbits.count() == 2;
    std::size_t pairs = 0;
    for (const Element& g : ball.elements()) {
      for (const Element& u : ball.elements()) {
        ++pairs;
        if (!initial_segment_check(g, u, orbits, table, iinf.matrix)) ok = false;
      }
    }
    detail = std::to_string(pairs) + " pairs with lengths <= 6, orbit count 2";
    return ok;
  });

  std::printf("%d of 12 criteria failed\n", runner.failures);
  return runner.failures;
}
