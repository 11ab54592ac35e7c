#include "coxrep/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace coxrep {

namespace {

constexpr Complex kI{0.0, 1.0};

// integral_0^h v^j exp(mu v) dv for j = 0,1,2.  Series expansion for
// small |mu| h (the closed forms cancel catastrophically there).
std::array<Complex, 3> cell_moments(double h, Complex mu) {
  std::array<Complex, 3> m{};
  if (std::abs(mu) * h < 0.5) {
    for (int j = 0; j <= 2; ++j) {
      double base = std::pow(h, j + 1);
      Complex c = 1.0;  // mu^n h^n / n!
      Complex sum = base / double(j + 1);
      for (int n = 1; n < 64; ++n) {
        c *= mu * h / double(n);
        Complex term = base * c / double(n + j + 1);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
      m[static_cast<std::size_t>(j)] = sum;
    }
  } else {
    Complex e = std::exp(mu * h);
    m[0] = (e - 1.0) / mu;
    m[1] = (h * e - m[0]) / mu;
    m[2] = (h * h * e - 2.0 * m[1]) / mu;
  }
  return m;
}

// integral_a^b u^k exp(mu u) du, k <= 2.
Complex power_exp_integral(double a, double b, Complex mu, int k) {
  auto m = cell_moments(b - a, mu);
  Complex shift = std::exp(mu * a);
  switch (k) {
    case 0:
      return shift * m[0];
    case 1:
      return shift * (a * m[0] + m[1]);
    default:
      return shift * (a * a * m[0] + 2.0 * a * m[1] + m[2]);
  }
}

// Common refinement grid of two step functions, starting at 0.
struct CommonGrid {
  std::vector<double> points;
  std::vector<Complex> f_values;
  std::vector<Complex> h_values;
  std::size_t cells() const { return points.empty() ? 0 : points.size() - 1; }
};

Complex value_at(const StepFunction& f, double t) {
  const auto& b = f.breakpoints();
  if (b.empty() || t < b.front() || t >= b.back()) return 0.0;
  auto it = std::upper_bound(b.begin(), b.end(), t);
  return f.values()[static_cast<std::size_t>(it - b.begin()) - 1];
}

CommonGrid common_grid(const StepFunction& f, const StepFunction& h) {
  CommonGrid g;
  g.points.push_back(0.0);
  g.points.insert(g.points.end(), f.breakpoints().begin(), f.breakpoints().end());
  g.points.insert(g.points.end(), h.breakpoints().begin(), h.breakpoints().end());
  std::sort(g.points.begin(), g.points.end());
  g.points.erase(std::unique(g.points.begin(), g.points.end()), g.points.end());
  for (std::size_t j = 0; j + 1 < g.points.size(); ++j) {
    double mid = 0.5 * (g.points[j] + g.points[j + 1]);
    g.f_values.push_back(value_at(f, mid));
    g.h_values.push_back(value_at(h, mid));
  }
  return g;
}

// Suffix integrals of e^{i t psi} v(t) at the grid points.
std::vector<Complex> twisted_suffixes(const CommonGrid& g, const std::vector<Complex>& values,
                                      double psi) {
  std::vector<Complex> suffix(g.points.size(), 0.0);
  for (std::size_t j = g.cells(); j-- > 0;) {
    double a = g.points[j], b = g.points[j + 1];
    Complex cell = psi == 0.0
                       ? Complex(b - a)
                       : (std::exp(kI * (b * psi)) - std::exp(kI * (a * psi))) / (kI * psi);
    suffix[j] = suffix[j + 1] + values[j] * cell;
  }
  return suffix;
}

struct SuffixTerm {
  Complex coef;
  int upow;     // 0 or 1
  double freq;  // coefficient of u in the phase
};

// F(u) on cell j as a sum of coef * u^upow * e^{i freq u}.
std::array<SuffixTerm, 2> cell_terms(const CommonGrid& g, const std::vector<Complex>& values,
                                     const std::vector<Complex>& suffix, double psi,
                                     std::size_t j) {
  double b = g.points[j + 1];
  Complex v = values[j];
  if (psi == 0.0) {
    return {SuffixTerm{suffix[j + 1] + v * b, 0, 0.0}, SuffixTerm{-v, 1, 0.0}};
  }
  Complex p = v / (kI * psi);
  return {SuffixTerm{suffix[j + 1] + p * std::exp(kI * (b * psi)), 0, 0.0},
          SuffixTerm{-p, 0, psi}};
}

double check_alpha(double alpha) {
  if (!(alpha > 1.0)) throw Error("alpha must be > 1");
  return std::log(alpha);
}

}  // namespace

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<Complex> values)
    : breaks_(std::move(breakpoints)), values_(std::move(values)) {
  if (breaks_.empty() && values_.empty()) return;
  if (breaks_.size() != values_.size() + 1)
    throw Error("step function needs one more breakpoint than values");
  if (breaks_.front() < 0.0) throw Error("step function must be supported in R_+");
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) throw Error("breakpoints must be strictly increasing");
  }
}

StepFunction StepFunction::indicator(double a, double b) {
  return StepFunction({a, b}, {Complex(1.0)});
}

Complex StepFunction::integral() const {
  Complex s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * (breaks_[i + 1] - breaks_[i]);
  return s;
}

TwistedStep apply_dtheta_cont(const StepFunction& f, double psi) { return TwistedStep{f, psi}; }

Complex twisted_integral(const TwistedStep& f) {
  CommonGrid g = common_grid(f.f, StepFunction());
  return twisted_suffixes(g, g.f_values, f.psi).front();
}

Complex form_twisted(const TwistedStep& f, const TwistedStep& h, double alpha) {
  double lambda = check_alpha(alpha);
  if (f.f.zero() || h.f.zero()) return 0.0;
  CommonGrid g = common_grid(f.f, h.f);
  std::vector<Complex> sf = twisted_suffixes(g, g.f_values, f.psi);
  std::vector<Complex> sh = twisted_suffixes(g, g.h_values, h.psi);
  // [f,h]_alpha = F(0) conj(H(0)) + log(alpha) integral alpha^u F(u) conj(H(u)) du
  Complex acc = 0.0;
  for (std::size_t j = 0; j < g.cells(); ++j) {
    auto tf = cell_terms(g, g.f_values, sf, f.psi, j);
    auto th = cell_terms(g, g.h_values, sh, h.psi, j);
    for (const SuffixTerm& x : tf) {
      for (const SuffixTerm& y : th) {
        Complex mu(lambda, x.freq - y.freq);
        acc += x.coef * std::conj(y.coef) *
               power_exp_integral(g.points[j], g.points[j + 1], mu, x.upow + y.upow);
      }
    }
  }
  return sf.front() * std::conj(sh.front()) + lambda * acc;
}

Complex form_continuous(const StepFunction& f, const StepFunction& h, double alpha) {
  return form_twisted(TwistedStep{f, 0.0}, TwistedStep{h, 0.0}, alpha);
}

namespace {

// One refinement level: midpoint-phase piecewise-constant approximant,
// evaluated in a single backward streaming pass.
Complex refined_level(const CommonGrid& g, double psi_f, double psi_h, double lambda,
                      long subdivisions) {
  Complex tf = 0.0, th = 0.0, acc = 0.0;
  for (std::size_t j = g.cells(); j-- > 0;) {
    double a0 = g.points[j];
    double width = (g.points[j + 1] - a0) / static_cast<double>(subdivisions);
    for (long i = subdivisions; i-- > 0;) {
      double a = a0 + width * static_cast<double>(i);
      double b = a + width;
      double tm = 0.5 * (a + b);
      Complex vf = g.f_values[j] * std::exp(kI * (tm * psi_f));
      Complex vh = g.h_values[j] * std::exp(kI * (tm * psi_h));
      Complex x0 = tf + vf * b;  // F(u) = x0 - vf u on [a,b)
      Complex y0 = th + vh * b;
      Complex i0 = power_exp_integral(a, b, Complex(lambda, 0.0), 0);
      Complex i1 = power_exp_integral(a, b, Complex(lambda, 0.0), 1);
      Complex i2 = power_exp_integral(a, b, Complex(lambda, 0.0), 2);
      acc += x0 * std::conj(y0) * i0 - (x0 * std::conj(vh) + vf * std::conj(y0)) * i1 +
             vf * std::conj(vh) * i2;
      tf += vf * width;
      th += vh * width;
    }
  }
  return tf * std::conj(th) + lambda * acc;
}

}  // namespace

Complex form_twisted_refined(const TwistedStep& f, const TwistedStep& h, double alpha, double tol,
                             int max_levels) {
  double lambda = check_alpha(alpha);
  if (f.f.zero() || h.f.zero()) return 0.0;
  CommonGrid g = common_grid(f.f, h.f);
  Complex prev = refined_level(g, f.psi, h.psi, lambda, 1);
  for (int level = 1; level <= max_levels; ++level) {
    Complex cur = refined_level(g, f.psi, h.psi, lambda, 1L << level);
    double scale = std::max(std::abs(cur), std::abs(prev));
    if (std::abs(cur - prev) <= tol * scale || scale < 1e-30) return cur;
    prev = cur;
  }
  throw Error("refined twisted form did not converge within " + std::to_string(max_levels) +
              " levels");
}

DiscreteFn DiscreteFn::delta(int n, Complex v) {
  DiscreteFn f;
  f.set(n, v);
  return f;
}

void DiscreteFn::set(int n, Complex v) {
  if (n < 0) throw Error("discrete functions live on Z_+");
  auto it = std::lower_bound(support_.begin(), support_.end(), n,
                             [](const auto& p, int k) { return p.first < k; });
  if (it != support_.end() && it->first == n) {
    it->second = v;
  } else {
    support_.insert(it, {n, v});
  }
}

Complex DiscreteFn::at(int n) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), n,
                             [](const auto& p, int k) { return p.first < k; });
  return it != support_.end() && it->first == n ? it->second : Complex(0.0);
}

Complex DiscreteFn::sum() const {
  Complex s = 0.0;
  for (const auto& [n, v] : support_) s += v;
  return s;
}

Complex form_discrete(const DiscreteFn& f, const DiscreteFn& h, double alpha) {
  check_alpha(alpha);
  Complex acc = 0.0;
  for (const auto& [k, fv] : f.support()) {
    for (const auto& [l, hv] : h.support()) {
      acc += std::pow(alpha, std::min(k, l)) * fv * std::conj(hv);
    }
  }
  return acc;
}

DiscreteFn apply_dtheta_disc(const DiscreteFn& f, Complex theta) {
  if (std::abs(std::abs(theta) - 1.0) > 1e-12) throw Error("theta must be unimodular");
  double psi = std::arg(theta);
  DiscreteFn out;
  for (const auto& [n, v] : f.support()) out.set(n, std::polar(1.0, psi * n) * v);
  return out;
}

double bound_constant(double psi, double alpha) {
  return 1.0 + 2.0 * std::abs(psi) / check_alpha(alpha);
}

namespace {

MultiplierCheck make_check(double lhs, double rhs, double constant) {
  MultiplierCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.constant = constant;
  double c2 = constant * constant;
  c.pass = lhs <= c2 * rhs * (1.0 + 1e-8);
  c.first_power_pass = lhs <= constant * rhs * (1.0 + 1e-8);
  c.ratio = rhs > 0.0 ? lhs / (c2 * rhs) : (lhs == 0.0 ? 0.0 : HUGE_VAL);
  return c;
}

}  // namespace

MultiplierCheck verify_theorem_2_1(const StepFunction& f, double psi, double alpha) {
  double rhs = form_continuous(f, f, alpha).real();
  double lhs = form_twisted(apply_dtheta_cont(f, psi), apply_dtheta_cont(f, psi), alpha).real();
  return make_check(lhs, rhs, bound_constant(psi, alpha));
}

MultiplierCheck verify_theorem_2_2(const DiscreteFn& f, Complex theta, double alpha) {
  DiscreteFn tf = apply_dtheta_disc(f, theta);
  double lhs = form_discrete(tf, tf, alpha).real();
  double rhs = form_discrete(f, f, alpha).real();
  return make_check(lhs, rhs, bound_constant(std::arg(theta), alpha));
}

HermitianKernelMatrix::HermitianKernelMatrix(Eigen::MatrixXcd entries,
                                             std::vector<std::string> labels)
    : entries_(std::move(entries)), labels_(std::move(labels)) {
  if (entries_.rows() != entries_.cols()) throw Error("kernel matrix must be square");
  double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  double dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12 * scale) throw Error("kernel matrix is not Hermitian");
  if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(entries_.rows()))
    throw Error("label count must match the dimension");
}

PsdCheck psd_check(const HermitianKernelMatrix& k, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(k.entries(),
                                                         Eigen::EigenvaluesOnly);
  double min_eig = solver.eigenvalues().minCoeff();
  double trace = k.entries().trace().real();
  return PsdCheck{min_eig, min_eig >= -tol * std::max(1.0, trace)};
}

MultiplierCheck corollary_schur(const HermitianKernelMatrix& lambda, Complex theta, double alpha) {
  check_alpha(alpha);
  if (std::abs(std::abs(theta) - 1.0) > 1e-12) throw Error("theta must be unimodular");
  if (!psd_check(lambda, 1e-9).pass)
    throw Error("corollary_schur requires a positive semidefinite kernel");
  double psi = std::arg(theta);
  int n = lambda.dim();
  Complex lhs_c = 0.0;
  double rhs = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      double w = std::pow(alpha, std::min(k, l));
      Complex phase = std::polar(1.0, psi * (k - l));
      lhs_c += phase * w * lambda.entries()(k, l);
      rhs += (w * lambda.entries()(k, l)).real();
    }
  }
  if (std::abs(lhs_c.imag()) > 1e-9 * std::max(1.0, std::abs(lhs_c)))
    throw Error("twisted kernel sum has an unexpected imaginary part");
  return make_check(lhs_c.real(), rhs, bound_constant(psi, alpha));
}

namespace {

struct PsiTruncation {
  int truncation = 0;
  double tail = 0.0;
  double lipschitz = 0.0;
  std::vector<double> coef;  // q^{j^2 - mu j}, j = 1..J
};

// Truncation of Psi_mu with a geometric tail bound below 1e-12.
PsiTruncation truncate_psi(double q, double mu) {
  if (!(q > 0.0 && q < 1.0)) throw Error("q must lie in (0,1)");
  double lq = std::log(q);
  auto term = [&](double j) { return std::exp(lq * (j * j - mu * j)); };
  PsiTruncation t;
  for (int J = 1; J < 100000; ++J) {
    double next = term(J + 1);
    double rho = std::exp(lq * (2.0 * (J + 1) + 1.0 - mu));
    double tail = 2.0 * next / (1.0 - rho);
    if (tail < 1e-12) {
      t.truncation = J;
      t.tail = tail;
      t.coef.resize(static_cast<std::size_t>(J));
      double deriv = 0.0;
      for (int j = 1; j <= J; ++j) {
        t.coef[static_cast<std::size_t>(j - 1)] = term(j);
        deriv += j * t.coef[static_cast<std::size_t>(j - 1)];
      }
      // |Psi'| <= 2 sum j q^{j^2 - mu j}, with its own tail bound.
      double dtail = next * ((J + 1) / (1.0 - rho) + rho / ((1.0 - rho) * (1.0 - rho)));
      t.lipschitz = 2.0 * (deriv + dtail);
      return t;
    }
  }
  throw Error("series truncation failed (q too close to 1)");
}

double grid_min_of(const PsiTruncation& t, int grid_points) {
  double lowest = HUGE_VAL;
  for (int g = 0; g < grid_points; ++g) {
    double x = 2.0 * std::numbers::pi * g / grid_points;
    double v = 1.0;
    for (std::size_t j = 0; j < t.coef.size(); ++j)
      v += 2.0 * t.coef[j] * std::cos((static_cast<double>(j) + 1.0) * x);
    lowest = std::min(lowest, v);
  }
  return lowest;
}

}  // namespace

double psi_mu_grid_min(double q, double mu, int grid_points) {
  return grid_min_of(truncate_psi(q, mu), grid_points);
}

MuCertificate mu_search(double q) {
  constexpr int kGrid = 4096;
  MuCertificate cert;
  cert.q = q;
  cert.grid_points = kGrid;
  cert.psi0_floor = psi_mu_grid_min(q, 0.0, kGrid);
  double tau = -std::log(q);
  double theta_floor =
      std::sqrt(std::numbers::pi / tau) *
      std::exp(-std::numbers::pi * std::numbers::pi / (4.0 * tau));
  double lq = std::log(q);
  for (int j = 0; j <= 40; ++j) {
    double mu = std::ldexp(1.0, -j);
    PsiTruncation t = truncate_psi(q, mu);
    double gmin = grid_min_of(t, kGrid);
    double slack = t.lipschitz * (std::numbers::pi / kGrid);
    // sup |Psi_mu - Psi_0| <= sum 2 (q^{-mu j} - 1) q^{j^2}; each term
    // is below q^{j^2 - mu j}, so the same tail bound applies.
    double domination = t.tail;
    for (int i = 1; i <= t.truncation; ++i)
      domination += 2.0 * (std::exp(lq * (-mu * i)) - 1.0) * std::exp(lq * (i * i));
    cert.mu = mu;
    cert.truncation = t.truncation;
    cert.grid_min = gmin;
    cert.tail = t.tail;
    cert.slack = slack;
    cert.theta_floor = theta_floor;
    cert.domination = domination;
    if (gmin - t.tail - slack > 0.0) {
      cert.found = true;
      cert.certified_by = "grid";
      return cert;
    }
    if (theta_floor - domination > 0.0) {
      cert.found = true;
      cert.certified_by = "floor";
      return cert;
    }
  }
  cert.found = false;
  cert.certified_by.clear();
  return cert;
}

double phi_poisson(double q, double t) {
  return (1.0 - q * q) / (1.0 - 2.0 * q * std::cos(t) + q * q);
}

MuPrimeCertificate mu_prime_search(double q, int k) {
  if (!(q > 0.0 && q < 1.0)) throw Error("q must lie in (0,1)");
  if (k < 1) throw Error("k must be a positive integer");
  MuPrimeCertificate cert;
  cert.q = q;
  cert.k = k;
  cert.psi0_min = std::pow((1.0 - q) / (1.0 + q), k);
  double base = std::pow((1.0 + q) / (1.0 - q), k);
  for (int j = 1; j <= 40; ++j) {
    double mu = std::ldexp(1.0, -j);
    double x = std::pow(q, 1.0 - mu);
    double dominating = std::pow((1.0 + x) / (1.0 - x), k) - base;
    if (dominating < cert.psi0_min) {
      cert.mu_prime = mu;
      cert.dominating_sum = dominating;
      cert.found = true;
      return cert;
    }
  }
  cert.found = false;
  return cert;
}

namespace {

void fft_pow2(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    Complex w0 = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      Complex w = 1.0;
      for (std::size_t j = 0; j < len / 2; ++j) {
        Complex u = a[i + j];
        Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= w0;
      }
    }
  }
}

}  // namespace

double psi_mu_prime_grid_min_2d(double q, double mu_prime, int grid_points) {
  if (!(q > 0.0 && q < 1.0)) throw Error("q must lie in (0,1)");
  const std::size_t m = static_cast<std::size_t>(grid_points);
  if (m < 4 || (m & (m - 1)) != 0) throw Error("grid size must be a power of two >= 4");
  double x = std::pow(q, 1.0 - mu_prime);
  int cut = std::max(8, static_cast<int>(std::ceil(std::log(1e-16 * (1.0 - x)) / std::log(x))));
  std::vector<Complex> a(m * m, 0.0);
  double lq = std::log(q);
  for (int n1 = -cut; n1 <= cut; ++n1) {
    std::size_t i = static_cast<std::size_t>(((n1 % grid_points) + grid_points) % grid_points);
    for (int n2 = -cut; n2 <= cut; ++n2) {
      std::size_t j = static_cast<std::size_t>(((n2 % grid_points) + grid_points) % grid_points);
      double e = std::abs(n1) + std::abs(n2) - mu_prime * std::abs(n1 + n2);
      a[i * m + j] += std::exp(lq * e);
    }
  }
  // Psi on the grid is the sign-(+1) 2-d DFT of the folded coefficients.
  std::vector<Complex> row(m), col(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::copy(a.begin() + static_cast<long>(i * m), a.begin() + static_cast<long>((i + 1) * m),
              row.begin());
    fft_pow2(row, +1);
    std::copy(row.begin(), row.end(), a.begin() + static_cast<long>(i * m));
  }
  double lowest = HUGE_VAL;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) col[i] = a[i * m + j];
    fft_pow2(col, +1);
    for (std::size_t i = 0; i < m; ++i) lowest = std::min(lowest, col[i].real());
  }
  return lowest;
}

}  // namespace coxrep
