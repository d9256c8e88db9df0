#pragma once

#include <numbers>
#include <utility>
#include <vector>

#include "zeno/hilbert.hpp"

namespace zeno {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kUnbiased = kPi / 4;

// Range checks; both throw InputError.
double checked_theta(double theta);
double checked_phi(double phi);

// Local vectors have dimension m+1 with |u> last.
Vec basis_vector(int level, int m = 2);
Vec zeta_plus(double phi);
Vec zeta_minus(double phi);
Vec omega_state(int m);

// -sin(theta)|u> + cos(theta)|zeta+(phi)>, or |omega> in place of zeta+ for m > 2.
Vec xi_state(double theta, double phi = kUnbiased, int m = 2);

// (|+~>, |-~>) with |+~> = cos(theta)|u> + sin(theta)|zeta+>, |-~> = |zeta->.
std::pair<Vec, Vec> tilde_basis(double theta, double phi = kUnbiased);

Vec tilde_bit(double theta, int b, double phi = kUnbiased);

// cos(theta)|u> + sin(theta)|omega>
Vec omega_tilde(double theta, int m);
Vec qudit_tilde_j(double theta, int j, int m);

Vec phi_sat(double theta, const std::vector<int>& assignment);
Vec undefined_product(int n, int m = 2);

// Closed form for the u-outcome probability of a single unit.
double undefined_probability(double theta);

// Exact |<u|phi_sat>|^2 per unit, cos^2/(1+sin^2).
double undefined_probability_exact(double theta);

// Tensor product of local vectors, first factor on unit 0.
Vec product_state(const std::vector<Vec>& factors);

}  // namespace zeno
