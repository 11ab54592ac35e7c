#include "coxrep/gns.hpp"

#include <algorithm>
#include <cmath>

#include "coxrep/parallel.hpp"

namespace coxrep {

namespace {

Complex unit_power(Complex theta, long n) {
  if (std::abs(std::abs(theta) - 1.0) > 1e-12) throw Error("theta must be unimodular");
  return std::polar(1.0, std::arg(theta) * static_cast<double>(n));
}

Eigen::VectorXcd real_times_complex(const Eigen::MatrixXd& m, const Eigen::VectorXcd& v) {
  Eigen::VectorXd re = m * v.real();
  Eigen::VectorXd im = m * v.imag();
  Eigen::VectorXcd out(v.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

}  // namespace

BallSpace BallSpace::build(const Ball& ball, double r) {
  if (!(r > 0.0 && r < 1.0)) throw Error("r must lie in (0,1)");
  BallSpace space(ball, r);
  const auto n = static_cast<Eigen::Index>(ball.size());
  const CoxeterMatrix& m = ball.matrix();
  space.gram_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    space.gram_(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double v = std::pow(r, distance(ball.at(static_cast<std::size_t>(i)),
                                      ball.at(static_cast<std::size_t>(j)), m));
      space.gram_(i, j) = v;
      space.gram_(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(space.gram_);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  space.min_eig_ = ev.minCoeff();
  double top = ev.maxCoeff();
  double floor = 1e-14 * top;
  Eigen::VectorXd clamped = ev.cwiseMax(floor);
  space.condition_ = top / clamped.minCoeff();
  space.sqrt_ = solver.eigenvectors() * clamped.cwiseSqrt().asDiagonal() *
                solver.eigenvectors().transpose();
  space.isqrt_ = solver.eigenvectors() * clamped.cwiseSqrt().cwiseInverse().asDiagonal() *
                 solver.eigenvectors().transpose();
  return space;
}

Complex BallSpace::inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& h) const {
  return h.dot(real_times_complex(gram_, f));
}

Eigen::VectorXcd BallSpace::delta(std::size_t index) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

Eigen::MatrixXcd BallOperator::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(codomain->dim()),
                                              static_cast<Eigen::Index>(domain->dim()));
  for (std::size_t u = 0; u < target.size(); ++u)
    m(static_cast<Eigen::Index>(target[u]), static_cast<Eigen::Index>(u)) = phase[u];
  return m;
}

Eigen::VectorXcd BallOperator::apply(const Eigen::VectorXcd& f) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(codomain->dim()));
  for (std::size_t u = 0; u < target.size(); ++u)
    out(static_cast<Eigen::Index>(target[u])) += phase[u] * f(static_cast<Eigen::Index>(u));
  return out;
}

BallOperator cocycle_diag(const Element& u, const Element& g, Complex theta,
                          const BallSpace& space) {
  const CoxeterMatrix& m = space.ball().matrix();
  BallOperator op;
  op.domain = &space;
  op.codomain = &space;
  op.target.resize(space.dim());
  op.phase.resize(space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const Element& v = space.ball().at(i);
    op.target[i] = i;
    op.phase[i] = unit_power(theta, distance(u, v, m) - distance(g, v, m));
  }
  return op;
}

CocycleCheck verify_cocycle_identities(const Element& u, const Element& g, const Element& v,
                                       Complex theta, const BallSpace& domain,
                                       const BallSpace& codomain) {
  const CoxeterMatrix& m = domain.ball().matrix();
  CocycleCheck out;
  BallOperator cug = cocycle_diag(u, g, theta, codomain);
  BallOperator cgv = cocycle_diag(g, v, theta, codomain);
  BallOperator cuv = cocycle_diag(u, v, theta, codomain);
  for (std::size_t i = 0; i < codomain.dim(); ++i)
    out.cocycle_err = std::max(out.cocycle_err, std::abs(cug.phase[i] * cgv.phase[i] - cuv.phase[i]));
  BallOperator trans = pi_translation(g, domain, codomain);
  BallOperator cvu = cocycle_diag(v, u, theta, domain);
  BallOperator cgvgu =
      cocycle_diag(multiply(g, v, m), multiply(g, u, m), theta, codomain);
  for (std::size_t x = 0; x < domain.dim(); ++x) {
    Complex lhs = cvu.phase[x];                        // then translate, phase kept
    Complex rhs = cgvgu.phase[trans.target[x]];        // translate, then scale at gx
    out.equivariance_err = std::max(out.equivariance_err, std::abs(lhs - rhs));
  }
  out.pass = out.cocycle_err <= 1e-12 && out.equivariance_err <= 1e-12;
  return out;
}

BallOperator pi_translation(const Element& g, const BallSpace& domain, const BallSpace& codomain) {
  const CoxeterMatrix& m = domain.ball().matrix();
  BallOperator op;
  op.domain = &domain;
  op.codomain = &codomain;
  op.target.resize(domain.dim());
  op.phase.resize(domain.dim());
  for (std::size_t i = 0; i < domain.dim(); ++i) {
    Element gu = multiply(g, domain.ball().at(i), m);
    auto j = codomain.ball().find(gu);
    if (!j)
      throw Error("codomain ball too small: needs radius >= domain radius + l(g)");
    op.target[i] = *j;
    op.phase[i] = 1.0;
  }
  return op;
}

BallOperator pi_z(const Element& g, Complex z, const BallSpace& domain,
                  const BallSpace& codomain) {
  double r = std::abs(z);
  if (!(r > 0.0 && r < 1.0)) throw Error("z must satisfy 0 < |z| < 1");
  if (std::abs(r - domain.r()) > 1e-12 || std::abs(r - codomain.r()) > 1e-12)
    throw Error("|z| must match the r used to build the spaces");
  Complex theta = z / r;
  BallOperator op = pi_translation(g, domain, codomain);
  for (std::size_t i = 0; i < domain.dim(); ++i) {
    long diff = codomain.ball().at(op.target[i]).length() - domain.ball().at(i).length();
    op.phase[i] = unit_power(theta, diff);
  }
  return op;
}

double restricted_norm(const BallOperator& op) {
  Eigen::MatrixXcd a = op.dense();
  Eigen::MatrixXcd b = op.codomain->gram_sqrt().cast<Complex>() * a *
                       op.domain->gram_isqrt().cast<Complex>();
  Eigen::MatrixXcd m = b.adjoint() * b;
  m = 0.5 * (m + m.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double theorem_bound(Complex z, double kappa) {
  double r = std::abs(z);
  if (!(r > 0.0 && r < 1.0)) throw Error("z must satisfy 0 < |z| < 1");
  if (!(kappa > 0.0)) throw Error("kappa must be positive");
  return 1.0 + 2.0 * std::abs(std::arg(z * z)) / (kappa * std::abs(std::log(r)));
}

HermitianKernelMatrix kappa_kernel(const NgFamily& family, double r, double kappa) {
  const auto n = static_cast<Eigen::Index>(family.sets.size());
  std::vector<double> card(family.sets.size());
  for (std::size_t i = 0; i < family.sets.size(); ++i)
    card[i] = static_cast<double>(family.sets[i].count());
  Eigen::MatrixXcd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      auto si = static_cast<std::size_t>(i);
      auto sj = static_cast<std::size_t>(j);
      double sym = static_cast<double>((family.sets[si] ^ family.sets[sj]).count());
      double v = std::pow(r, kappa * std::min(card[si], card[sj]) + sym);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return HermitianKernelMatrix(std::move(k));
}

KappaEstimate kappa_search(const Element& g, double r, const Ball& family_ball,
                           const ReflectionTable& table, const CoxeterMatrix& m,
                           std::optional<int> orbit_count, std::size_t family_cap) {
  if (!(r > 0.0 && r < 1.0)) throw Error("r must lie in (0,1)");
  KappaEstimate est;
  est.g = g;
  est.r = r;
  NgFamily family = n_g_family(g, family_ball, table, m);
  est.family_size = family.sets.size();
  if (family.sets.size() > family_cap) {
    est.found = false;
    return est;
  }
  constexpr double kPsdTol = 1e-9;
  auto passes = [&](double kappa) { return psd_check(kappa_kernel(family, r, kappa), kPsdTol); };
  double lo = std::ldexp(1.0, -40);
  PsdCheck lo_check = passes(lo);
  if (!lo_check.pass) {
    est.found = false;
    return est;
  }
  double hi = 8.0;
  PsdCheck hi_check = passes(hi);
  if (hi_check.pass) {
    lo = hi;
    lo_check = hi_check;
  } else {
    while (hi - lo > std::ldexp(1.0, -12)) {
      double mid = 0.5 * (lo + hi);
      PsdCheck c = passes(mid);
      if (c.pass) {
        lo = mid;
        lo_check = c;
      } else {
        hi = mid;
      }
    }
  }
  est.found = true;
  est.kappa_min_grid = lo;
  est.psd_margin = lo_check.min_eig;
  if (orbit_count) {
    MuPrimeCertificate mp = mu_prime_search(r, *orbit_count);
    if (mp.found) {
      est.kappa_lemma = 2.0 * mp.mu_prime;
      est.lemma_psd = passes(*est.kappa_lemma).pass;
    }
  }
  return est;
}

NormSweepResult verify_theorem_4_4(const CoxeterMatrix& m, const NormSweepConfig& config,
                                   const std::vector<Element>& gamma) {
  NormSweepResult result;
  result.pass = true;
  Ball dom_ball = Ball::enumerate(m, config.domain_radius);
  Ball cod_ball = Ball::enumerate(m, config.codomain_radius);
  // The kappa families range over the codomain ball, whose N-sets need
  // reflections up to radius 2 * codomain_radius - 1.
  Ball table_ball = Ball::enumerate(m, 2 * config.codomain_radius - 1);
  ReflectionTable table = ReflectionTable::enumerate(table_ball);
  std::optional<int> orbit_count;
  if (!gamma.empty()) orbit_count = orbit_partition(table, gamma, m).count();

  std::vector<Element> gs;
  for (const Element& g : dom_ball.elements()) {
    if (g.length() <= config.g_max) gs.push_back(g);
  }

  for (double r : config.r_values) {
    BallSpace dom = BallSpace::build(dom_ball, r);
    BallSpace cod = BallSpace::build(cod_ball, r);
    double kappa = 0.0;
    if (config.kappa_override) {
      kappa = *config.kappa_override;
    } else {
      bool have = false;
      for (const Element& g : gs) {
        if (g.is_identity()) continue;  // 1x1 family, no constraint
        KappaEstimate est = kappa_search(g, r, cod_ball, table, m, orbit_count);
        result.kappa_estimates.push_back(est);
        if (!est.found) {
          result.pass = false;
          continue;
        }
        kappa = have ? std::min(kappa, est.kappa_min_grid) : est.kappa_min_grid;
        have = true;
      }
      if (!have) kappa = 1.0;  // rank-1 style degenerate sweep
    }
    result.kappa_per_r.emplace_back(r, kappa);

    std::size_t base = result.rows.size();
    result.rows.resize(base + gs.size() * static_cast<std::size_t>(config.arg_steps));
    parallel_for(gs.size() * static_cast<std::size_t>(config.arg_steps), [&](std::size_t idx) {
      const Element& g = gs[idx / static_cast<std::size_t>(config.arg_steps)];
      int k = static_cast<int>(idx % static_cast<std::size_t>(config.arg_steps));
      double phi = 2.0 * std::numbers::pi * k / config.arg_steps;
      Complex z = std::polar(r, phi);
      NormCheckRow row;
      row.g = g;
      row.z = z;
      row.kappa_used = kappa;
      row.norm = restricted_norm(pi_z(g, z, dom, cod));
      row.bound = theorem_bound(z, kappa);
      row.ratio = row.norm / row.bound;
      row.pass = row.norm <= row.bound * (1.0 + config.tolerance);
      row.gram_flagged = dom.flagged() || cod.flagged();
      result.rows[base + idx] = std::move(row);
    });
  }
  for (const NormCheckRow& row : result.rows) {
    if (!row.pass) result.pass = false;
  }
  return result;
}

IntertwinerCheck verify_intertwiners(const Element& g, Complex z, const BallSpace& domain,
                                     const BallSpace& codomain) {
  IntertwinerCheck out;
  BallOperator op = pi_z(g, z, domain, codomain);
  BallOperator op_neg = pi_z(g, -z, domain, codomain);
  BallOperator op_bar = pi_z(g, std::conj(z), domain, codomain);
  double sign = g.length() % 2 == 0 ? 1.0 : -1.0;
  for (std::size_t u = 0; u < op.target.size(); ++u) {
    out.sign_err = std::max(out.sign_err, std::abs(sign * op.phase[u] - op_neg.phase[u]));
    out.conj_err = std::max(out.conj_err, std::abs(std::conj(op.phase[u]) - op_bar.phase[u]));
  }
  // theta -> c_theta(u,v) is multiplicative on the circle.
  Complex theta = z / std::abs(z);
  Complex theta2 = std::polar(1.0, std::numbers::pi / 5.0);
  BallOperator c1 = cocycle_diag(Element(), g, theta, domain);
  BallOperator c2 = cocycle_diag(Element(), g, theta2, domain);
  BallOperator c12 = cocycle_diag(Element(), g, theta * theta2, domain);
  for (std::size_t i = 0; i < domain.dim(); ++i) {
    out.cocycle_mult_err =
        std::max(out.cocycle_mult_err, std::abs(c1.phase[i] * c2.phase[i] - c12.phase[i]));
  }
  out.pass = out.sign_err <= 1e-12 && out.conj_err <= 1e-12 && out.cocycle_mult_err <= 1e-12;
  return out;
}

}  // namespace coxrep
