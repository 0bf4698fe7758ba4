#include "augls/kellogg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace augls {

namespace {

// Residuals of the three tangent identities, as written with everything on
// one side:
//   F1 = R + tan((pi/2 - phi) g) * cot(rho g)
//   F2 = 1/R + tan(rho g) * cot(phi g)
//   F3 = R + tan(phi g) * cot((pi/2 - rho) g)
std::array<double, 3> identity_residuals(const KelloggParams& p) {
  const double g = p.gamma, rho = p.rho, phi = p.phi, R = p.contrast;
  const double f1 = R + std::tan((M_PI / 2 - phi) * g) / std::tan(rho * g);
  const double f2 = 1.0 / R + std::tan(rho * g) / std::tan(phi * g);
  const double f3 = R + std::tan(phi * g) / std::tan((M_PI / 2 - rho) * g);
  return {f1, f2, f3};
}

double contrast_from_phi(double gamma, double rho, double phi) {
  return -std::tan((M_PI / 2 - phi) * gamma) / std::tan(rho * gamma);
}

}  // namespace

double kellogg_residual(const KelloggParams& p) {
  const auto f = identity_residuals(p);
  return std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2])});
}

bool kellogg_constraints_ok(const KelloggParams& p) {
  const double g = p.gamma;
  if (!(g > 0.0 && g < 2.0)) return false;
  const double lo_rho = std::max(0.0, M_PI * g - M_PI);
  const double hi_rho = std::min(M_PI * g, M_PI);
  if (!(lo_rho < 2.0 * g * p.rho && 2.0 * g * p.rho < hi_rho)) return false;
  const double lo_phi = std::max(0.0, M_PI - M_PI * g);
  const double hi_phi = std::min(M_PI, 2.0 * M_PI - M_PI * g);
  if (!(lo_phi < -2.0 * g * p.phi && -2.0 * g * p.phi < hi_phi)) return false;
  return p.contrast > 0.0;
}

namespace {

// Second identity with R eliminated through the first one, scaled by R so the
// root is well conditioned in phi: G(phi) = 1 + R(phi) tan(rho g) cot(phi g).
double scaled_second_identity(double gamma, double rho, double phi) {
  const double R = contrast_from_phi(gamma, rho, phi);
  return 1.0 + R * std::tan(rho * gamma) / std::tan(phi * gamma);
}

}  // namespace

KelloggParams solve_params(double gamma, double rho) {
  if (!(gamma > 0.0 && gamma < 2.0)) throw KelloggParamError("solve_params: gamma outside (0,2)");

  // admissible phi window from the inequality constraint on phi
  const double lo = -std::min(M_PI, 2.0 * M_PI - M_PI * gamma) / (2.0 * gamma);
  const double hi = -std::max(0.0, M_PI - M_PI * gamma) / (2.0 * gamma);

  // coarse scan for sign changes of the eliminated system; each bracketed
  // root is a Newton candidate, accepted when the constraints hold
  const int scan_points = 4000;
  std::vector<std::pair<double, double>> brackets;
  double prev_phi = 0.0, prev_g = std::numeric_limits<double>::quiet_NaN();
  for (int i = 1; i < scan_points; ++i) {
    const double phi = lo + (hi - lo) * i / scan_points;
    const double R = contrast_from_phi(gamma, rho, phi);
    const double g = scaled_second_identity(gamma, rho, phi);
    if (!(R > 0.0) || !std::isfinite(g)) {
      prev_g = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    if (std::isfinite(prev_g) && prev_g * g <= 0.0) brackets.emplace_back(prev_phi, phi);
    prev_phi = phi;
    prev_g = g;
  }
  if (brackets.empty()) {
    throw KelloggParamError("solve_params: no admissible bracket for (gamma, rho)");
  }

  for (const auto& [blo, bhi] : brackets) {
    // bisection to machine precision in phi
    double a = blo, b = bhi;
    double ga = scaled_second_identity(gamma, rho, a);
    for (int it = 0; it < 200 && b - a > 1e-16 * std::abs(a); ++it) {
      const double mid = 0.5 * (a + b);
      const double gm = scaled_second_identity(gamma, rho, mid);
      if (ga * gm <= 0.0) {
        b = mid;
      } else {
        a = mid;
        ga = gm;
      }
    }
    KelloggParams p{gamma, rho, 0.5 * (a + b), 0.0};
    p.contrast = contrast_from_phi(gamma, rho, p.phi);

    // damped Newton polish on (phi, R) with the scaled second identity
    for (int it = 0; it < 100; ++it) {
      const double f1 = p.contrast + std::tan((M_PI / 2 - p.phi) * gamma) / std::tan(rho * gamma);
      const double t2 = std::tan(rho * gamma) / std::tan(p.phi * gamma);
      const double f2 = 1.0 + p.contrast * t2;
      if (std::abs(f1) <= 1e-13 * std::max(1.0, p.contrast) && std::abs(f2) <= 1e-13) break;
      const double c1 = std::cos((M_PI / 2 - p.phi) * gamma);
      const double s2 = std::sin(p.phi * gamma);
      const double j11 = -gamma / (c1 * c1) / std::tan(rho * gamma);
      const double j12 = 1.0;
      const double j21 = -gamma * p.contrast * std::tan(rho * gamma) / (s2 * s2);
      const double j22 = t2;
      const double det = j11 * j22 - j12 * j21;
      if (det == 0.0 || !std::isfinite(det)) break;
      const double dphi = (f1 * j22 - f2 * j12) / det;
      const double dR = (j11 * f2 - j21 * f1) / det;
      const double f0 = std::hypot(f1, f2);
      double step = 1.0;
      bool accepted = false;
      for (int halving = 0; halving < 60; ++halving) {
        KelloggParams trial = p;
        trial.phi -= step * dphi;
        trial.contrast -= step * dR;
        const double tf1 =
            trial.contrast + std::tan((M_PI / 2 - trial.phi) * gamma) / std::tan(rho * gamma);
        const double tf2 = 1.0 + trial.contrast * std::tan(rho * gamma) / std::tan(trial.phi * gamma);
        if (std::isfinite(tf1) && std::isfinite(tf2) && std::hypot(tf1, tf2) < f0) {
          p = trial;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }

    if (kellogg_residual(p) <= 1e-12 && kellogg_constraints_ok(p)) {
      return p;
    }
  }
  throw KelloggParamError("solve_params: Newton did not converge for gamma=" +
                          std::to_string(gamma));
}

KelloggParams preset_params(int data_index) {
  switch (data_index) {
    case 1:
      return solve_params(0.5, M_PI / 4);
    case 2:
      return solve_params(0.2, M_PI / 4);
    case 3:
      return solve_params(0.15, M_PI / 4);
    case 4:
      return solve_params(0.1, M_PI / 4);
    default:
      throw KelloggParamError("preset_params: data index must be 1..4");
  }
}

namespace {

// Branch data for mu on [0,2pi): mu(theta) = amplitude * cos((theta-shift)*gamma).
struct MuBranch {
  double amplitude;
  double shift;
};

MuBranch mu_branch(double theta, const KelloggParams& p) {
  const double g = p.gamma;
  if (theta <= M_PI / 2) return {std::cos((M_PI / 2 - p.phi) * g), M_PI / 2 - p.rho};
  if (theta <= M_PI) return {std::cos(p.rho * g), M_PI - p.phi};
  if (theta <= 1.5 * M_PI) return {std::cos(p.phi * g), M_PI + p.rho};
  return {std::cos((M_PI / 2 - p.rho) * g), 1.5 * M_PI + p.phi};
}

double wrap_angle(double theta) {
  theta = std::fmod(theta, 2.0 * M_PI);
  if (theta < 0.0) theta += 2.0 * M_PI;
  return theta;
}

}  // namespace

double mu(double theta, const KelloggParams& p) {
  theta = wrap_angle(theta);
  const MuBranch b = mu_branch(theta, p);
  return b.amplitude * std::cos((theta - b.shift) * p.gamma);
}

double mu_prime(double theta, const KelloggParams& p) {
  theta = wrap_angle(theta);
  const MuBranch b = mu_branch(theta, p);
  return -p.gamma * b.amplitude * std::sin((theta - b.shift) * p.gamma);
}

double ExactSolution::alpha_at(const Vec2& x) const {
  const bool odd_quadrant = (x.x > 0.0 && x.y > 0.0) || (x.x < 0.0 && x.y < 0.0);
  return odd_quadrant ? p_.contrast : 1.0;
}

double ExactSolution::u_tilde(const Vec2& x) const {
  const double r = norm(x);
  if (r == 0.0) return 0.0;
  const double theta = wrap_angle(std::atan2(x.y, x.x));
  return std::pow(r, p_.gamma) * mu(theta, p_);
}

Vec2 ExactSolution::grad_u_tilde(const Vec2& x) const {
  const double r = norm(x);
  if (r == 0.0) throw std::domain_error("grad_u_tilde: singular at the origin");
  const double theta = wrap_angle(std::atan2(x.y, x.x));
  const double rg1 = std::pow(r, p_.gamma - 1.0);
  const double radial = p_.gamma * rg1 * mu(theta, p_);
  const double angular = rg1 * mu_prime(theta, p_);
  const double c = std::cos(theta), s = std::sin(theta);
  return {radial * c - angular * s, radial * s + angular * c};
}

}  // namespace augls
