#include "zeno/states.hpp"

#include <cmath>
#include <string>

#include "zeno/error.hpp"

namespace zeno {

namespace {
constexpr double kAngleSlack = 1e-12;
}

double checked_theta(double theta) {
  if (!(theta >= -kAngleSlack && theta <= kPi / 2 + kAngleSlack))
    throw InputError("theta must lie in [0, pi/2], got " + std::to_string(theta));
  return theta;
}

double checked_phi(double phi) {
  if (!(phi > 0.0 && phi < kPi / 2)) throw InputError("phi must lie in (0, pi/2), got " + std::to_string(phi));
  return phi;
}

Vec basis_vector(int level, int m) {
  if (level < 0 || level > m) throw InputError("level out of range: " + std::to_string(level));
  Vec v = Vec::Zero(m + 1);
  v(level) = 1.0;
  return v;
}

Vec zeta_plus(double phi) {
  checked_phi(phi);
  Vec v = Vec::Zero(3);
  v(0) = std::cos(phi);
  v(1) = std::sin(phi);
  return v;
}

Vec zeta_minus(double phi) {
  checked_phi(phi);
  Vec v = Vec::Zero(3);
  v(0) = std::sin(phi);
  v(1) = -std::cos(phi);
  return v;
}

Vec omega_state(int m) {
  if (m < 2) throw InputError("qudit dimension must be at least 2");
  Vec v = Vec::Zero(m + 1);
  v.head(m).setConstant(1.0 / std::sqrt(double(m)));
  return v;
}

Vec xi_state(double theta, double phi, int m) {
  checked_theta(theta);
  checked_phi(phi);
  if (m != 2 && std::abs(phi - kUnbiased) > 1e-15)
    throw UnsupportedError("biased driving is only defined for m = 2");
  Vec top = (m == 2) ? zeta_plus(phi) : omega_state(m);
  Vec v = std::cos(theta) * top;
  v(m) = -std::sin(theta);
  return v;
}

std::pair<Vec, Vec> tilde_basis(double theta, double phi) {
  checked_theta(theta);
  Vec plus = std::sin(theta) * zeta_plus(phi);
  plus(2) = std::cos(theta);
  return {plus, zeta_minus(phi)};
}

Vec tilde_bit(double theta, int b, double phi) {
  if (b != 0 && b != 1) throw InputError("bit must be 0 or 1");
  auto [plus, minus] = tilde_basis(theta, phi);
  const double c = std::cos(phi), s = std::sin(phi);
  // at phi = pi/4 both reduce to (|+~> +- |->)/sqrt(2)
  return b == 0 ? Vec(c * plus + s * minus) : Vec(s * plus - c * minus);
}

Vec omega_tilde(double theta, int m) {
  checked_theta(theta);
  Vec v = std::sin(theta) * omega_state(m);
  v(m) = std::cos(theta);
  return v;
}

Vec qudit_tilde_j(double theta, int j, int m) {
  checked_theta(theta);
  if (m < 2) throw InputError("qudit dimension must be at least 2");
  if (j < 0 || j >= m) throw InputError("level index out of range: " + std::to_string(j));
  // |j> = |omega>/sqrt(m) + sqrt((m-1)/m)|j_> with |j_> the normalised part of |j> orthogonal to |omega>;
  // rotating |omega> into |omega~> gives an orthonormal frame of the allowed space.
  Vec jbar = basis_vector(j, m) - omega_state(m) / std::sqrt(double(m));
  jbar /= jbar.norm();
  return omega_tilde(theta, m) / std::sqrt(double(m)) + std::sqrt((m - 1.0) / m) * jbar;
}

Vec product_state(const std::vector<Vec>& factors) {
  Vec out = Vec::Ones(1);
  for (const Vec& f : factors) {
    Vec next(out.size() * f.size());
    // little-endian: later units are more significant
    for (Eigen::Index a = 0; a < f.size(); ++a) next.segment(a * out.size(), out.size()) = f(a) * out;
    out = std::move(next);
  }
  return out;
}

Vec phi_sat(double theta, const std::vector<int>& assignment) {
  checked_theta(theta);
  if (assignment.empty()) throw InputError("assignment must not be empty");
  std::vector<Vec> factors;
  for (int s : assignment) {
    if (s != 0 && s != 1) throw InputError("assignment entries must be bits");
    Vec f = Vec::Zero(3);
    f(2) = std::cos(theta);
    f(s) = std::sqrt(2.0) * std::sin(theta);
    factors.push_back(f / std::sqrt(1.0 + std::sin(theta) * std::sin(theta)));
  }
  return product_state(factors);
}

Vec undefined_product(int n, int m) {
  SpaceSpec spec(n, m);
  Vec v = Vec::Zero(spec.dim());
  v(spec.dim() - 1) = 1.0;
  return v;
}

double undefined_probability(double theta) {
  checked_theta(theta);
  const double c = std::cos(theta), s = std::sin(theta);
  const double r = std::sqrt(2.0) - 1.0;
  return c * c / (1.0 + s * s * r * r);
}

double undefined_probability_exact(double theta) {
  checked_theta(theta);
  const double c = std::cos(theta), s = std::sin(theta);
  return c * c / (1.0 + s * s);
}

}  // namespace zeno
