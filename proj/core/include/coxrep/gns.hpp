#pragma once

// Finite stages of the GNS-type construction: Gram matrices
// r^{d(u,v)} over Cayley balls, the diagonal cocycles c_theta, the
// twisted representations pi_z with their restricted operator norms,
// and the kappa estimates feeding the uniform norm bound.

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "coxrep/kernels.hpp"
#include "coxrep/reflection_sets.hpp"

namespace coxrep {

// An enumerated ball together with the Gram matrix of <.,.>_r and the
// spectral data needed for norms.  Immutable after construction.
class BallSpace {
 public:
  // gram[u][v] = r^{d(u,v)}; positive definite for 0 < r < 1.
  static BallSpace build(const Ball& ball, double r);

  const Ball& ball() const noexcept { return ball_; }
  double r() const noexcept { return r_; }
  std::size_t dim() const noexcept { return ball_.size(); }
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }
  double min_eig() const noexcept { return min_eig_; }
  double condition() const noexcept { return condition_; }
  bool flagged() const noexcept { return condition_ > 1e12; }
  const Eigen::MatrixXd& gram_sqrt() const noexcept { return sqrt_; }
  const Eigen::MatrixXd& gram_isqrt() const noexcept { return isqrt_; }

  // <f,h>_r for coefficient vectors over the ball.
  Complex inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& h) const;
  Eigen::VectorXcd delta(std::size_t index) const;

 private:
  BallSpace(Ball ball, double r) : ball_(std::move(ball)), r_(r) {}
  Ball ball_;
  double r_;
  Eigen::MatrixXd gram_, sqrt_, isqrt_;
  double min_eig_ = 0.0, condition_ = 0.0;
};

// Monomial operator between two stages with the same r: column u has
// the single entry phase[u] in row target[u].
struct BallOperator {
  const BallSpace* domain = nullptr;
  const BallSpace* codomain = nullptr;
  std::vector<std::size_t> target;
  std::vector<Complex> phase;

  Eigen::MatrixXcd dense() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const;
};

// c_theta(u, g): diagonal with entry theta^{l(u^-1 v) - l(g^-1 v)} at v.
BallOperator cocycle_diag(const Element& u, const Element& g, Complex theta,
                          const BallSpace& space);

struct CocycleCheck {
  double cocycle_err = 0.0;       // c(u,g) c(g,v) vs c(u,v)
  double equivariance_err = 0.0;  // pi_r(g) c(v,u) vs c(gv,gu) pi_r(g)
  bool pass = false;
};

CocycleCheck verify_cocycle_identities(const Element& u, const Element& g, const Element& v,
                                       Complex theta, const BallSpace& domain,
                                       const BallSpace& codomain);

// pi_z(g) delta_u = theta^{l(gu) - l(u)} delta_{gu} with z = theta r;
// requires g . (domain ball) inside the codomain ball.
BallOperator pi_z(const Element& g, Complex z, const BallSpace& domain,
                  const BallSpace& codomain);

// The untwisted translation pi_r(g).
BallOperator pi_translation(const Element& g, const BallSpace& domain, const BallSpace& codomain);

// Largest generalized singular value with respect to the two Gram
// forms; a lower bound for the operator norm on the completed space.
double restricted_norm(const BallOperator& op);

// 1 + 2 |arg(z^2)| / (kappa |log r|), r = |z|.
double theorem_bound(Complex z, double kappa);

// The kernel (U,V) -> r^{kappa (|U| /\ |V|) + |U xor V|} over a family.
HermitianKernelMatrix kappa_kernel(const NgFamily& family, double r, double kappa);

struct KappaEstimate {
  Element g;
  double r = 0.0;
  std::size_t family_size = 0;
  bool found = false;
  double kappa_min_grid = 0.0;  // largest dyadic-grid kappa passing psd_check
  double psd_margin = 0.0;      // min eigenvalue at kappa_min_grid
  std::optional<double> kappa_lemma;  // 2 mu'(r, Lambda) when Gamma is configured
  bool lemma_psd = true;              // kernel PSD at kappa_lemma
};

// Dyadic bisection for the largest kappa whose kernel over the family
// N^g (u ranging over family_ball) passes psd_check.  Families larger
// than family_cap are reported with found = false.
KappaEstimate kappa_search(const Element& g, double r, const Ball& family_ball,
                           const ReflectionTable& table, const CoxeterMatrix& m,
                           std::optional<int> orbit_count = std::nullopt,
                           std::size_t family_cap = 4000);

struct NormCheckRow {
  Element g;
  Complex z;
  double norm = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  double kappa_used = 0.0;
  bool pass = false;
  bool gram_flagged = false;
};

struct NormSweepConfig {
  int g_max = 3;
  std::vector<double> r_values = {0.5, 0.8};
  int arg_steps = 16;
  int domain_radius = 3;
  int codomain_radius = 6;
  std::optional<double> kappa_override;
  double tolerance = 1e-8;
};

struct NormSweepResult {
  std::vector<NormCheckRow> rows;
  std::vector<KappaEstimate> kappa_estimates;
  std::vector<std::pair<double, double>> kappa_per_r;  // (r, kappa used)
  bool pass = false;
};

// The headline check: restricted_norm(pi_z(g)) <= theorem_bound(z, kappa)
// over every g with l(g) <= g_max and every z on the (r, arg) grid.
// kappa per r is the minimum of the per-g search results (the largest
// value sound for all tested g), unless overridden.
NormSweepResult verify_theorem_4_4(const CoxeterMatrix& m, const NormSweepConfig& config,
                                   const std::vector<Element>& gamma = {});

struct IntertwinerCheck {
  double sign_err = 0.0;     // (-1)^{l(g)} pi_z(g) vs pi_{-z}(g)
  double conj_err = 0.0;     // conj . pi_z(g) . conj vs pi_{zbar}(g)
  double cocycle_mult_err = 0.0;  // c_{t1 t2} vs c_{t1} c_{t2}
  bool pass = false;
};

IntertwinerCheck verify_intertwiners(const Element& g, Complex z, const BallSpace& domain,
                                     const BallSpace& codomain);

}  // namespace coxrep
