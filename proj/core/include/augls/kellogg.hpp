#ifndef AUGLS_KELLOGG_HPP
#define AUGLS_KELLOGG_HPP

#include <stdexcept>

#include "augls/geometry.hpp"

namespace augls {

/// Parameters of the checkerboard interface solution r^gamma * mu(theta).
/// gamma is the regularity exponent, rho and phi are the angle parameters,
/// and R is the coefficient contrast. Valid parameter sets satisfy three
/// tangent identities and three inequality constraints; see solve_params.
struct KelloggParams {
  double gamma = 0.0;
  double rho = 0.0;
  double phi = 0.0;
  double contrast = 0.0;  // R
};

struct KelloggParamError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Largest absolute residual of the three tangent identities.
double kellogg_residual(const KelloggParams& p);

/// True when the three inequality constraints hold.
bool kellogg_constraints_ok(const KelloggParams& p);

/// Solves the two-unknown tangent system for (phi, R) given (gamma, rho) by
/// damped Newton iteration, seeded by a coarse scan over phi with R
/// eliminated. Verifies the third identity and the inequality constraints.
/// Throws KelloggParamError on non-convergence or constraint violation.
KelloggParams solve_params(double gamma, double rho);

/// Preset benchmark parameter sets: gamma = {0.5, 0.2, 0.15, 0.1} for
/// data_index 1..4, all with rho = pi/4.
KelloggParams preset_params(int data_index);

/// Piecewise-cosine angular factor and its derivative, theta in [0, 2*pi).
double mu(double theta, const KelloggParams& p);
double mu_prime(double theta, const KelloggParams& p);

/// Exact fields of the benchmark problem: u = u_tilde + u0 with
/// u0 = x+1 for x <= 0 and 1 for x > 0, sigma = -alpha * grad(u_tilde),
/// div(sigma) = 0, data f = grad(u0) and g = 0.
class ExactSolution {
 public:
  explicit ExactSolution(const KelloggParams& p) : p_(p) {}

  const KelloggParams& params() const { return p_; }

  double alpha_at(const Vec2& x) const;

  double u_tilde(const Vec2& x) const;
  /// Throws std::domain_error at the origin (the gradient is singular there;
  /// quadrature points never coincide with the origin).
  Vec2 grad_u_tilde(const Vec2& x) const;

  double u0(const Vec2& x) const { return x.x <= 0.0 ? x.x + 1.0 : 1.0; }
  Vec2 grad_u0(const Vec2& x) const { return x.x < 0.0 ? Vec2{1.0, 0.0} : Vec2{0.0, 0.0}; }

  double u(const Vec2& x) const { return u_tilde(x) + u0(x); }
  Vec2 grad_u(const Vec2& x) const { return grad_u_tilde(x) + grad_u0(x); }

  Vec2 sigma(const Vec2& x) const { return -alpha_at(x) * grad_u_tilde(x); }
  double div_sigma(const Vec2&) const { return 0.0; }

  Vec2 f(const Vec2& x) const { return grad_u0(x); }
  double g(const Vec2&) const { return 0.0; }

 private:
  KelloggParams p_;
};

}  // namespace augls

#endif
