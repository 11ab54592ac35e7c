#pragma once

// Length-shell coefficients of z^{l(.)} recovered by torus quadrature,
// the multiplier bound for the shell indicators, Fejer smoothing and
// the approximate-identity schedule, plus the tail bound witnessing
// norm convergence of the series.

#include <complex>
#include <utility>
#include <vector>

#include "coxrep/coxeter.hpp"

namespace coxrep {

using Complex = std::complex<double>;

// phi_z(g) = <pi_z(g) delta_e, delta_e>_r = theta^{l(g)} r^{d(g,e)}.
Complex phi_coefficient(const Element& g, Complex z, const CoxeterMatrix& m);

// (1/2pi) integral phi_{r e^{it}}(g) e^{-int} dt by trapezoidal
// quadrature on quad_points nodes; exact (= r^n [n = l(g)]) because
// the integrand is a trigonometric polynomial of degree < quad_points.
Complex chi_coefficient(const Element& g, int n, double r, int quad_points,
                        const CoxeterMatrix& m);

// 2 pi e (1 + 4 pi n / kappa).
double char_bound(int n, double kappa);

// w[k] = 1 - k/(N+1) for k = 0..N.
struct FejerWeights {
  int order = 0;
  std::vector<double> w;
};

FejerWeights fejer_weights(int order);
double fejer_eval(int order, double t);         // weighted cosine sum
double fejer_closed_form(int order, double t);  // (1/(N+1)) (sin((N+1)t/2) / sin(t/2))^2

// psi_{N,r}(g) = (1 - l/(N+1)) r^l for l = l(g) <= N, else 0.
double psi_nr(int len, int order, double r);
double psi_nr(const Element& g, int order, double r);
// Independent route: Fejer-weighted quadrature of phi_{re^{it}}(g);
// requires quad_points > order + l(g).
double psi_nr_quadrature(const Element& g, int order, double r, int quad_points,
                         const CoxeterMatrix& m);

struct DemoEntry {
  int order = 0;
  double r = 0.0;
  double sup_dev = 0.0;
  int argmax_len = 0;
};

// sup |psi_{N,r}(g) - 1| over the lengths realized in the ball, per
// schedule entry (order, r).
std::vector<DemoEntry> approximate_identity_demo(
    const Ball& ball, const std::vector<std::pair<int, double>>& schedule);

// sum_{n >= n0} char_bound(n, kappa) |z|^n, in closed form.
double series_tail_bound(Complex z, int n0, double kappa);

}  // namespace coxrep
