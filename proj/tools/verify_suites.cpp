#include "verify_suites.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "coxrep/rng.hpp"

namespace coxrep::cli {

namespace {

constexpr double kPi = std::numbers::pi;
using nlohmann::json;

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

StepFunction random_step(SplitMix64& rng, int max_cells, double support_end) {
  int cells = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_cells)));
  std::vector<double> breaks;
  for (int i = 0; i < cells + 1; ++i) breaks.push_back(rng.uniform(0.0, support_end));
  std::sort(breaks.begin(), breaks.end());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] - breaks[i] < 1e-6) breaks[i + 1] = breaks[i] + 1e-6;
  }
  std::vector<Complex> values;
  for (int i = 0; i < cells; ++i)
    values.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return StepFunction(std::move(breaks), std::move(values));
}

DiscreteFn random_discrete(SplitMix64& rng, int max_support, int max_index) {
  DiscreteFn f;
  int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_support)));
  for (int i = 0; i < k; ++i) {
    f.set(static_cast<int>(rng.below(static_cast<std::uint64_t>(max_index))),
          {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
  }
  return f;
}

template <typename Fn>
std::size_t for_all_words(int rank, int max_len, std::size_t cap, Fn&& fn) {
  std::size_t seen = 0;
  for (int n = 0; n <= max_len; ++n) {
    Word w(static_cast<std::size_t>(n), 0);
    for (;;) {
      if (seen >= cap) return seen;
      ++seen;
      fn(w);
      int i = n - 1;
      while (i >= 0 && w[static_cast<std::size_t>(i)] == rank - 1) {
        w[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      w[static_cast<std::size_t>(i)]++;
    }
  }
  return seen;
}

struct Pipeline {
  const VerifyConfig& config;
  const CoxeterMatrix& m;
  std::vector<SuiteResult> results;

  void run(const std::string& name, const std::function<bool(json&)>& body) {
    auto start = std::chrono::steady_clock::now();
    SuiteResult r;
    r.name = name;
    r.details = json::object();
    try {
      r.pass = body(r.details);
    } catch (const std::exception& e) {
      r.pass = false;
      r.details["error"] = e.what();
    }
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
};

}  // namespace

std::vector<SuiteResult> run_verify(const VerifyConfig& config) {
  const CoxeterMatrix& m = config.preset.matrix;
  Pipeline p{config, m, {}};

  p.run("core-oracle", [&](json& d) {
    bool ok = true;
    std::string witness;
    std::size_t words = for_all_words(m.rank(), 8, 100000, [&](const Word& w) {
      Element fast = reduce_fast(w, m);
      if (!(fast == reduce_reference(w, m))) {
        ok = false;
        if (witness.empty()) witness = to_string(Element::from_normal_form(w));
      }
    });
    d["claim"] = "reduce_fast equals reduce_reference on all short words";
    d["words"] = words;
    if (!ok) d["witness"] = witness;
    return ok;
  });

  p.run("nset-identities", [&](json& d) {
    int radius = std::min(config.radius, 4);
    ReflectionTable table = ReflectionTable::enumerate(Ball::enumerate(m, 2 * radius - 1));
    Ball ball = Ball::enumerate(m, radius);
    bool ok = true;
    for (const Element& g : ball.elements()) {
      NSet ns = n_set(g, table, m);
      if (static_cast<int>(ns.ordered.size()) != g.length()) {
        ok = false;
        d["witness"] = to_string(g);
      }
    }
    d["claim"] = "card N_g = l(g)";
    d["elements"] = ball.size();
    return ok;
  });

  p.run("distance-identity", [&](json& d) {
    int radius = std::min(config.radius, 3);
    ReflectionTable table = ReflectionTable::enumerate(Ball::enumerate(m, 2 * radius - 1));
    Ball ball = Ball::enumerate(m, radius);
    bool ok = true;
    std::size_t pairs = 0;
    for (const Element& g : ball.elements()) {
      for (const Element& h : ball.elements()) {
        ++pairs;
        if (sym_diff_distance(g, h, table, m) != distance(g, h, m)) {
          ok = false;
          d["witness"] = to_string(g) + " vs " + to_string(h);
        }
      }
    }
    d["claim"] = "d(g,h) = card(N_g xor N_h)";
    d["pairs"] = pairs;
    return ok;
  });

  p.run("kernel-sweep", [&](json& d) {
    SplitMix64 rng(config.seed);
    bool ok = true;
    std::size_t checks = 0, first_power = 0;
    double worst_ratio = 0.0;
    for (int trial = 0; trial < std::max(1, config.trials / 10); ++trial) {
      StepFunction f = random_step(rng, 10, 5.0);
      for (double psi : {kPi / 4.0, -kPi / 4.0, kPi, -kPi}) {
        for (double alpha : {1.5, std::numbers::e, 4.0}) {
          MultiplierCheck c = verify_theorem_2_1(f, psi, alpha);
          ++checks;
          worst_ratio = std::max(worst_ratio, c.ratio);
          if (!c.pass) ok = false;
        }
      }
    }
    for (int trial = 0; trial < config.trials; ++trial) {
      DiscreteFn f = random_discrete(rng, 20, 40);
      for (int k = 0; k < 16; ++k) {
        for (double alpha : {1.5, std::numbers::e, 4.0}) {
          MultiplierCheck c = verify_theorem_2_2(f, std::polar(1.0, k * kPi / 8.0), alpha);
          ++checks;
          worst_ratio = std::max(worst_ratio, c.ratio);
          if (!c.pass) ok = false;
          if (c.first_power_pass) ++first_power;
        }
      }
    }
    for (int trial = 0; trial < std::max(1, config.trials / 10); ++trial) {
      Eigen::MatrixXcd a(10, 5);
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
          a(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
      HermitianKernelMatrix lam(a * a.adjoint());
      MultiplierCheck c = corollary_schur(lam, std::polar(1.0, rng.uniform(-kPi, kPi)),
                                          1.0 + rng.uniform(0.1, 3.0));
      ++checks;
      worst_ratio = std::max(worst_ratio, c.ratio);
      if (!c.pass) ok = false;
    }
    d["claim"] = "twisted forms bounded by C^2 times the plain forms";
    d["checks"] = checks;
    d["first_power_compliance"] = first_power;
    d["worst_ratio"] = worst_ratio;
    return ok;
  });

  p.run("fourier-certificates", [&](json& d) {
    MuCertificate mu = mu_search(0.5);
    MuPrimeCertificate mup = mu_prime_search(0.5, 2);
    d["claim"] = "positive definiteness certificates for the two lemmas";
    d["mu"] = mu_certificate_json(mu);
    d["mu_prime"] = mu_prime_certificate_json(mup);
    bool ok = mu.found && mup.found;
    if (ok) ok = psi_mu_grid_min(0.5, mu.mu, 16 * mu.grid_points) - mu.tail > 0.0;
    if (ok) ok = psi_mu_prime_grid_min_2d(0.5, mup.mu_prime, 256) > 0.0;
    return ok;
  });

  p.run("gram-psd", [&](json& d) {
    Ball ball = Ball::enumerate(m, config.radius);
    bool ok = true;
    double worst = 1e300;
    for (double r : config.r_values) {
      BallSpace space = BallSpace::build(ball, r);
      worst = std::min(worst, space.min_eig());
      if (!(space.min_eig() > 1e-12 * static_cast<double>(space.dim()))) {
        ok = false;
        d["witness_r"] = r;
      }
    }
    d["claim"] = "gram matrices of r^d are positive definite";
    d["min_eigenvalue"] = worst;
    d["dimension"] = ball.size();
    return ok;
  });

  p.run("cocycle-identities", [&](json& d) {
    Ball dom_ball = Ball::enumerate(m, config.radius);
    BallSpace dom = BallSpace::build(dom_ball, config.r_values.front());
    BallSpace cod = BallSpace::build(Ball::enumerate(m, 2 * config.radius),
                                     config.r_values.front());
    SplitMix64 rng(config.seed);
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < config.trials; ++trial) {
      const Element& u = dom_ball.at(rng.below(dom_ball.size()));
      const Element& g = dom_ball.at(rng.below(dom_ball.size()));
      const Element& v = dom_ball.at(rng.below(dom_ball.size()));
      CocycleCheck c = verify_cocycle_identities(u, g, v, rng.unit_complex(), dom, cod);
      worst = std::max({worst, c.cocycle_err, c.equivariance_err});
      if (!c.pass) {
        ok = false;
        d["witness"] = to_string(u) + "," + to_string(g) + "," + to_string(v);
      }
    }
    d["claim"] = "cocycle equalities and equivariance, entrywise to 1e-12";
    d["triples"] = config.trials;
    d["worst_error"] = worst;
    return ok;
  });

  p.run("coefficient-identity", [&](json& d) {
    Ball point = Ball::enumerate(m, 0);
    Ball ball = Ball::enumerate(m, config.radius);
    bool ok = true;
    double worst = 0.0;
    for (double r : config.r_values) {
      BallSpace dom = BallSpace::build(point, r);
      BallSpace cod = BallSpace::build(ball, r);
      std::size_t e_at = *cod.ball().find(Element());
      for (const Element& g : ball.elements()) {
        for (int k = 0; k < config.arg_steps; ++k) {
          Complex z = std::polar(r, 2.0 * kPi * k / config.arg_steps);
          Complex coeff =
              cod.inner(pi_z(g, z, dom, cod).apply(dom.delta(0)), cod.delta(e_at));
          double err = std::abs(coeff - std::pow(z, g.length()));
          worst = std::max(worst, err);
          if (err > 1e-12) {
            ok = false;
            d["witness"] = to_string(g);
          }
        }
      }
    }
    d["claim"] = "<pi_z(g) delta_e, delta_e>_r = z^{l(g)}";
    d["worst_error"] = worst;
    return ok;
  });

  p.run("theorem-4-4", [&](json& d) {
    NormSweepConfig sweep;
    sweep.g_max = config.radius;
    sweep.r_values = config.r_values;
    sweep.arg_steps = config.arg_steps;
    sweep.domain_radius = config.radius;
    sweep.codomain_radius = 2 * config.radius;
    NormSweepResult result = verify_theorem_4_4(m, sweep, config.preset.gamma);
    d["claim"] = "restricted norms stay below the uniform bound";
    json details = norm_sweep_json(result);
    d["kappa_per_r"] = details["kappa_per_r"];
    d["rows"] = details["rows"];
    double worst = 0.0;
    for (const NormCheckRow& row : result.rows) worst = std::max(worst, row.ratio);
    d["worst_ratio"] = worst;
    return result.pass;
  });

  p.run("intertwiners", [&](json& d) {
    Ball dom_ball = Ball::enumerate(m, config.radius);
    BallSpace dom = BallSpace::build(dom_ball, config.r_values.front());
    BallSpace cod = BallSpace::build(Ball::enumerate(m, 2 * config.radius),
                                     config.r_values.front());
    SplitMix64 rng(config.seed + 1);
    bool ok = true;
    for (int trial = 0; trial < config.trials; ++trial) {
      const Element& g = dom_ball.at(rng.below(dom_ball.size()));
      IntertwinerCheck c =
          verify_intertwiners(g, rng.unit_complex() * config.r_values.front(), dom, cod);
      if (!c.pass) {
        ok = false;
        d["witness"] = to_string(g);
      }
    }
    d["claim"] = "sign twist, conjugation intertwiner, cocycle multiplicativity";
    d["trials"] = config.trials;
    return ok;
  });

  p.run("shell-coefficients", [&](json& d) {
    int radius = std::min(6, config.radius + 3);
    Ball ball = Ball::enumerate(m, radius);
    bool ok = true;
    double worst = 0.0;
    for (const Element& g : ball.elements()) {
      for (int n = 0; n <= 8; ++n) {
        Complex expected = n == g.length() ? Complex(std::pow(0.5, n)) : Complex(0.0);
        double err = std::abs(chi_coefficient(g, n, 0.5, 64, m) - expected);
        worst = std::max(worst, err);
        if (err > 1e-12) {
          ok = false;
          d["witness"] = to_string(g);
        }
      }
    }
    if (std::abs(char_bound(0, 1.0) - 2.0 * kPi * std::numbers::e) > 1e-12) ok = false;
    d["claim"] = "chi_n(g) recovered as r^n [n = l(g)] by torus quadrature";
    d["worst_error"] = worst;
    d["ball_radius"] = radius;
    return ok;
  });

  p.run("fejer-demo", [&](json& d) {
    bool ok = true;
    double lowest = 1e300;
    for (int n = 0; n <= 64; ++n) {
      for (int k = 0; k < 4096; ++k)
        lowest = std::min(lowest, fejer_eval(n, 2.0 * kPi * k / 4096.0));
    }
    for (int n : {128, 256}) {
      for (int k = 0; k < 4096; ++k)
        lowest = std::min(lowest, fejer_eval(n, 2.0 * kPi * k / 4096.0));
    }
    if (lowest < -1e-10) ok = false;
    Ball ball = Ball::enumerate(m, 10);
    auto entries = approximate_identity_demo(ball, {{10, 0.9}, {50, 0.98}, {200, 0.995}});
    json schedule = json::array();
    for (const DemoEntry& e : entries) {
      schedule.push_back({{"N", e.order}, {"r", e.r}, {"sup_dev", e.sup_dev}});
    }
    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
      if (!(entries[i + 1].sup_dev < entries[i].sup_dev + 1e-15)) ok = false;
    }
    int max_len = 0;
    for (const Element& g : ball.elements()) max_len = std::max(max_len, g.length());
    double closed = std::abs(1.0 - psi_nr(max_len, 200, 0.995));
    if (std::abs(entries.back().sup_dev - closed) > 1e-10) ok = false;
    d["claim"] = "Fejer positivity, unit mean, approximate-identity schedule";
    d["fejer_min"] = lowest;
    d["schedule"] = schedule;
    return ok;
  });

  return p.results;
}

nlohmann::json verify_report(const VerifyConfig& config, const std::vector<SuiteResult>& suites) {
  json report;
  report["schema"] = 1;
  report["command"] = "verify";
  report["config"] = {
      {"group", config.preset.name},
      {"rank", config.preset.matrix.rank()},
      {"radius", config.radius},
      {"r", config.r_values},
      {"arg_steps", config.arg_steps},
      {"trials", config.trials},
      {"seed", config.seed},
  };
  bool pass = true;
  json list = json::array();
  for (const SuiteResult& s : suites) {
    // No timings here: identical config and seed must reproduce the
    // report byte for byte.
    list.push_back({{"name", s.name}, {"pass", s.pass}, {"details", s.details}});
    if (!s.pass) pass = false;
  }
  report["suites"] = list;
  report["pass"] = pass;
  return report;
}

nlohmann::json kappa_estimate_json(const KappaEstimate& est) {
  json j{{"g", to_string(est.g)},
         {"r", est.r},
         {"family_size", est.family_size},
         {"found", est.found},
         {"kappa_min_grid", est.kappa_min_grid},
         {"psd_margin", est.psd_margin}};
  if (est.kappa_lemma) {
    j["kappa_lemma"] = *est.kappa_lemma;
    j["lemma_psd"] = est.lemma_psd;
  }
  return j;
}

nlohmann::json norm_sweep_json(const NormSweepResult& result) {
  json rows = json::array();
  for (const NormCheckRow& row : result.rows) {
    rows.push_back({{"g", to_string(row.g)},
                    {"z", complex_json(row.z)},
                    {"norm", row.norm},
                    {"bound", row.bound},
                    {"ratio", row.ratio},
                    {"kappa_used", row.kappa_used},
                    {"pass", row.pass},
                    {"gram_flagged", row.gram_flagged}});
  }
  json kappas = json::array();
  for (const auto& [r, kappa] : result.kappa_per_r)
    kappas.push_back({{"r", r}, {"kappa", kappa}});
  json estimates = json::array();
  for (const KappaEstimate& est : result.kappa_estimates)
    estimates.push_back(kappa_estimate_json(est));
  return json{{"rows", rows},
              {"kappa_per_r", kappas},
              {"kappa_estimates", estimates},
              {"pass", result.pass}};
}

nlohmann::json mu_certificate_json(const MuCertificate& cert) {
  return json{{"q", cert.q},
              {"mu", cert.mu},
              {"found", cert.found},
              {"J", cert.truncation},
              {"grid_points", cert.grid_points},
              {"grid_min", cert.grid_min},
              {"tail", cert.tail},
              {"slack", cert.slack},
              {"psi0_floor", cert.psi0_floor},
              {"theta_floor", cert.theta_floor},
              {"domination", cert.domination},
              {"certified_by", cert.certified_by}};
}

nlohmann::json mu_prime_certificate_json(const MuPrimeCertificate& cert) {
  return json{{"q", cert.q},
              {"k", cert.k},
              {"mu_prime", cert.mu_prime},
              {"found", cert.found},
              {"dominating_sum", cert.dominating_sum},
              {"psi0_min", cert.psi0_min}};
}

}  // namespace coxrep::cli
