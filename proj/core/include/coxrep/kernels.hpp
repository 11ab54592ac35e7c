#pragma once

// The min-kernel calculus: sesquilinear forms [.,.]_alpha built from
// the kernel alpha^{s /\ t} (continuous and discrete), the unimodular
// multiplication operators D_theta with their norm bound, the Schur
// corollary, positive-definiteness certificates for the two Fourier
// lemmas, and a dense Hermitian PSD check.  Pure functions throughout.

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "coxrep/coxeter.hpp"  // error types

namespace coxrep {

using Complex = std::complex<double>;

// Piecewise-constant compactly supported function on R_+:
// value values[k] on [breakpoints[k], breakpoints[k+1]).
class StepFunction {
 public:
  StepFunction() = default;  // the zero function
  StepFunction(std::vector<double> breakpoints, std::vector<Complex> values);
  static StepFunction indicator(double a, double b);

  const std::vector<double>& breakpoints() const noexcept { return breaks_; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  bool zero() const noexcept { return values_.empty(); }
  Complex integral() const;

 private:
  std::vector<double> breaks_;
  std::vector<Complex> values_;
};

// t -> e^{i t psi} f(t).
struct TwistedStep {
  StepFunction f;
  double psi = 0.0;
};

TwistedStep apply_dtheta_cont(const StepFunction& f, double psi);

Complex twisted_integral(const TwistedStep& f);

// [f,h]_alpha with the min-kernel integrated exactly per cell.
Complex form_continuous(const StepFunction& f, const StepFunction& h, double alpha);

// Twisted form, exact per-cell closed forms (the phase factors
// integrate in elementary terms against alpha^u).
Complex form_twisted(const TwistedStep& f, const TwistedStep& h, double alpha);

// Independent quadrature route: approximates the phase as piecewise
// constant, subdividing every cell until two successive refinements
// differ by less than `tol` relative; throws Error past `max_levels`.
Complex form_twisted_refined(const TwistedStep& f, const TwistedStep& h, double alpha,
                             double tol = 1e-9, int max_levels = 20);

// Finitely supported function on Z_+.
class DiscreteFn {
 public:
  DiscreteFn() = default;
  static DiscreteFn delta(int n, Complex v = 1.0);

  void set(int n, Complex v);
  Complex at(int n) const;
  const std::vector<std::pair<int, Complex>>& support() const noexcept { return support_; }
  Complex sum() const;

 private:
  std::vector<std::pair<int, Complex>> support_;  // sorted by index
};

// [f,h]^o_alpha = sum_{k,l} alpha^{k /\ l} f_k conj(h_l).
Complex form_discrete(const DiscreteFn& f, const DiscreteFn& h, double alpha);

// (D_theta f)_n = theta^n f_n; theta must be unimodular to 1e-12.
DiscreteFn apply_dtheta_disc(const DiscreteFn& f, Complex theta);

// C = 1 + 2|psi| / log(alpha).
double bound_constant(double psi, double alpha);

struct MultiplierCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;  // C
  double ratio = 0.0;     // lhs / (C^2 rhs)
  bool pass = false;             // lhs <= C^2 rhs (1 + 1e-8)
  bool first_power_pass = false;  // lhs <= C   rhs (1 + 1e-8), recorded only
};

MultiplierCheck verify_theorem_2_1(const StepFunction& f, double psi, double alpha);
MultiplierCheck verify_theorem_2_2(const DiscreteFn& f, Complex theta, double alpha);

// Finite Hermitian matrix (kernel samples, Gram forms).  The
// constructor enforces Hermitian symmetry to 1e-12 relative.
class HermitianKernelMatrix {
 public:
  explicit HermitianKernelMatrix(Eigen::MatrixXcd entries, std::vector<std::string> labels = {});

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  Eigen::MatrixXcd entries_;
  std::vector<std::string> labels_;
};

struct PsdCheck {
  double min_eig = 0.0;
  bool pass = false;  // min_eig >= -tol * max(1, trace)
};

PsdCheck psd_check(const HermitianKernelMatrix& k, double tol);

// sum theta^k conj(theta)^l alpha^{k/\l} Lambda_{k,l}
//   <= C^2 sum alpha^{k/\l} Lambda_{k,l}   for PSD Lambda.
MultiplierCheck corollary_schur(const HermitianKernelMatrix& lambda, Complex theta, double alpha);

// Certificate that Psi_mu(t) = sum_j q^{j^2 - mu|j|} e^{-ijt} stays
// positive.  Two routes are tried: the grid route (grid minimum minus
// series tail minus Lipschitz slack) and the floor route (the theta
// identity gives Psi_0 >= sqrt(pi/tau) e^{-pi^2/4tau} > 0, and
// |Psi_mu - Psi_0| is dominated uniformly by a computable sum).  The
// grid route saturates near q -> 1, where the true minimum of Psi_0
// decays below any practical Lipschitz slack; the floor route covers
// that regime.
struct MuCertificate {
  double q = 0.0;
  double mu = 0.0;
  bool found = false;
  int truncation = 0;   // J: series cut at |j| <= J
  int grid_points = 0;
  double grid_min = 0.0;
  double tail = 0.0;   // bound on the dropped |j| > J mass
  double slack = 0.0;  // Lipschitz bound times half the grid spacing
  double psi0_floor = 0.0;    // grid minimum of Psi_0 (strictly positive)
  double theta_floor = 0.0;   // sqrt(pi/tau) e^{-pi^2/4 tau} <= min Psi_0
  double domination = 0.0;    // bound on sup |Psi_mu - Psi_0|
  std::string certified_by;   // "grid" or "floor"
  double margin() const { return grid_min - tail - slack; }
  double floor_margin() const { return theta_floor - domination; }
};

// Largest mu in {2^-j} certified positive by either route.
MuCertificate mu_search(double q);

// Grid minimum of the truncated Psi_mu (tail < 1e-12); used by the
// refinement cross-checks.
double psi_mu_grid_min(double q, double mu, int grid_points);

// Certificate for the k-fold lemma: the closed-form dominating sum
// (A^k - B^k with A, B geometric series values) must stay below
// min Psi_0 = ((1-q)/(1+q))^k.
struct MuPrimeCertificate {
  double q = 0.0;
  int k = 0;
  double mu_prime = 0.0;
  bool found = false;
  double dominating_sum = 0.0;
  double psi0_min = 0.0;
};

MuPrimeCertificate mu_prime_search(double q, int k);

// Phi(t) = (1-q^2)/(1-2q cos t + q^2).
double phi_poisson(double q, double t);

// Direct 2-d Fourier sum of Psi_mu' on a grid_points^2 torus grid
// (k = 2 cross-check); returns the grid minimum of the real part.
double psi_mu_prime_grid_min_2d(double q, double mu_prime, int grid_points);

}  // namespace coxrep
