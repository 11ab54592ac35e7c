#include "coxrep/multiplier.hpp"

#include <cmath>
#include <numbers>

namespace coxrep {

namespace {
constexpr double kPi = std::numbers::pi;
}

Complex phi_coefficient(const Element& g, Complex z, const CoxeterMatrix& m) {
  double r = std::abs(z);
  if (!(r > 0.0 && r < 1.0)) throw Error("z must satisfy 0 < |z| < 1");
  int d = distance(g, Element(), m);
  return std::polar(std::pow(r, d), std::arg(z / r) * g.length());
}

Complex chi_coefficient(const Element& g, int n, double r, int quad_points,
                        const CoxeterMatrix& m) {
  if (n < 0) throw Error("n must be non-negative");
  if (!(r > 0.0 && r < 1.0)) throw Error("r must lie in (0,1)");
  if (quad_points < 4 * std::max(n, 1) || quad_points <= n + g.length())
    throw Error("quadrature order too small for the requested coefficient");
  Complex acc = 0.0;
  for (int k = 0; k < quad_points; ++k) {
    double t = 2.0 * kPi * k / quad_points;
    acc += phi_coefficient(g, std::polar(r, t), m) * std::polar(1.0, -n * t);
  }
  return acc / static_cast<double>(quad_points);
}

double char_bound(int n, double kappa) {
  if (!(kappa > 0.0)) throw Error("kappa must be positive");
  return 2.0 * kPi * std::numbers::e * (1.0 + 4.0 * kPi * n / kappa);
}

FejerWeights fejer_weights(int order) {
  if (order < 0) throw Error("the Fejer order must be non-negative");
  FejerWeights f;
  f.order = order;
  f.w.resize(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k)
    f.w[static_cast<std::size_t>(k)] = 1.0 - static_cast<double>(k) / (order + 1);
  return f;
}

double fejer_eval(int order, double t) {
  if (order < 0) throw Error("the Fejer order must be non-negative");
  double v = 1.0;
  for (int k = 1; k <= order; ++k)
    v += 2.0 * (1.0 - static_cast<double>(k) / (order + 1)) * std::cos(k * t);
  return v;
}

double fejer_closed_form(int order, double t) {
  double s = std::sin(0.5 * t);
  if (std::abs(s) < 1e-9) return order + 1.0;
  double num = std::sin(0.5 * (order + 1) * t);
  return num * num / ((order + 1) * s * s);
}

double psi_nr(int len, int order, double r) {
  if (len > order) return 0.0;
  return (1.0 - static_cast<double>(len) / (order + 1)) * std::pow(r, len);
}

double psi_nr(const Element& g, int order, double r) { return psi_nr(g.length(), order, r); }

double psi_nr_quadrature(const Element& g, int order, double r, int quad_points,
                         const CoxeterMatrix& m) {
  if (quad_points <= order + g.length())
    throw Error("quadrature order too small for the Fejer smoothing");
  Complex acc = 0.0;
  for (int k = 0; k < quad_points; ++k) {
    double t = 2.0 * kPi * k / quad_points;
    acc += fejer_eval(order, t) * phi_coefficient(g, std::polar(r, t), m);
  }
  return (acc / static_cast<double>(quad_points)).real();
}

std::vector<DemoEntry> approximate_identity_demo(
    const Ball& ball, const std::vector<std::pair<int, double>>& schedule) {
  if (schedule.empty()) throw Error("the demo schedule must be non-empty");
  std::vector<std::size_t> counts = ball.growth();
  std::vector<DemoEntry> out;
  out.reserve(schedule.size());
  for (const auto& [order, r] : schedule) {
    if (!(r > 0.0 && r < 1.0)) throw Error("r must lie in (0,1)");
    DemoEntry e;
    e.order = order;
    e.r = r;
    for (std::size_t len = 0; len < counts.size(); ++len) {
      if (counts[len] == 0) continue;
      double dev = std::abs(1.0 - psi_nr(static_cast<int>(len), order, r));
      if (dev >= e.sup_dev) {
        e.sup_dev = dev;
        e.argmax_len = static_cast<int>(len);
      }
    }
    out.push_back(e);
  }
  return out;
}

double series_tail_bound(Complex z, int n0, double kappa) {
  double x = std::abs(z);
  if (!(x < 1.0)) throw Error("|z| must be below 1");
  if (n0 < 0) throw Error("n0 must be non-negative");
  if (!(kappa > 0.0)) throw Error("kappa must be positive");
  if (x == 0.0) return n0 == 0 ? char_bound(0, kappa) : 0.0;
  double xp = std::pow(x, n0);
  double geom = xp / (1.0 - x);
  double weighted = xp * (n0 + x * (1.0 - n0)) / ((1.0 - x) * (1.0 - x));
  return 2.0 * kPi * std::numbers::e * (geom + 4.0 * kPi / kappa * weighted);
}

}  // namespace coxrep
