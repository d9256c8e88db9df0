#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "zeno/analysis.hpp"
#include "zeno/error.hpp"
#include "zeno/operators.hpp"
#include "zeno/states.hpp"

using namespace zeno;

namespace {

IsingProblem random_problem(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  IsingProblem p;
  for (int j = 0; j < n; ++j) p.h.push_back(u(rng));
  p.J = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) p.J(j, k) = p.J(k, j) = u(rng);
  return p;
}

}  // namespace

TEST_CASE("ising diagonal against a direct sum") {
  std::mt19937_64 rng(1);
  const IsingProblem p = random_problem(3, rng);
  const SpaceSpec s(3);
  const Eigen::VectorXd d = ising_diagonal(p, s);
  const double z[3] = {1.0, -1.0, 0.0};
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const TritString t = trit_string(i, s);
    double e = 0.0;
    for (int j = 0; j < 3; ++j) {
      e += p.h[j] * z[t[j]];
      for (int k = j + 1; k < 3; ++k) e += p.J(j, k) * z[t[j]] * z[t[k]];
    }
    CHECK(d(Eigen::Index(i)) == doctest::Approx(e).epsilon(1e-14));
  }
  const Eigen::VectorXd off = offset_diagonal({0.5}, s);
  CHECK(off(26) == doctest::Approx(-1.5));
  CHECK(off(0) == 0.0);
}

TEST_CASE("forbidden generator equals the sum of embedded projectors") {
  const SpaceSpec s(2);
  const ForbiddenSet f = unit_forbidden_entries(0.6, s, 2.0);
  const Vec x = xi_state(0.6);
  const Mat P = x * x.adjoint();
  const Mat expected = 2.0 * (oracle::single_site(P, 0, 2, 3) + oracle::single_site(P, 1, 2, 3));
  CHECK(max_abs(forbidden_generator(f, s) - expected) < 1e-14);
}

TEST_CASE("effective Hamiltonian matches exact projection") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 3;
    const IsingProblem p = random_problem(n, rng);
    const OffsetSpec o{2.0 * u(rng)};
    const double th = kPi / 2 * u(rng);
    CHECK(effective_hamiltonian_residual(th, p, o) < 1e-10);
  }
}

TEST_CASE("auxiliary variable doubles the field spectrum") {
  std::mt19937_64 rng(4);
  IsingProblem p = random_problem(3, rng);
  const IsingProblem q = auxiliary_field_transform(p);
  CHECK(q.size() == 4);
  std::vector<double> a, b;
  for (int i = 0; i < 8; ++i) {
    double e = 0;
    for (int j = 0; j < 3; ++j) {
      const double zj = (i >> j & 1) ? -1.0 : 1.0;
      e += p.h[j] * zj;
      for (int k = j + 1; k < 3; ++k) e += p.J(j, k) * zj * ((i >> k & 1) ? -1.0 : 1.0);
    }
    a.push_back(e);
    a.push_back(e);
  }
  for (int i = 0; i < 16; ++i) {
    double e = 0;
    for (int j = 0; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) e += q.J(j, k) * ((i >> j & 1) ? -1.0 : 1.0) * ((i >> k & 1) ? -1.0 : 1.0);
    b.push_back(e);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (int i = 0; i < 16; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
}

TEST_CASE("transverse-field Hamiltonian endpoints") {
  const Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(8, -1.0, 1.0);
  const Mat h1 = transverse_field_hamiltonian(1.0, d);
  CHECK(max_abs(h1 - Mat(d.cast<cplx>().asDiagonal())) == 0.0);
  const auto ev = oracle::hermitian_eigenvalues(transverse_field_hamiltonian(0.0, d));
  CHECK(ev.front() == doctest::Approx(-3.0));
  CHECK_THROWS_AS(transverse_field_hamiltonian(1.5, d), InputError);
}

TEST_CASE("stirap dark state and spectrum") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.01, 2.0);
  for (int i = 0; i < 20; ++i) {
    const StirapPulse p{u(rng), u(rng)};
    const Mat H = stirap_hamiltonian(p);
    auto ev = oracle::hermitian_eigenvalues(H);
    const double r = std::hypot(p.A, p.B);
    CHECK(ev[0] == doctest::Approx(-r).epsilon(1e-12));
    CHECK(std::abs(ev[1]) < 1e-12);
    CHECK(std::abs(ev[2]) < 1e-12);
    CHECK(ev[3] == doctest::Approx(r).epsilon(1e-12));
    Vec dark = Vec::Zero(4);
    dark.head(3) = tilde_basis(std::atan(p.B / p.A)).first;
    CHECK((H * dark).norm() < 1e-12);
  }
  const auto two = stirap_schedule({0.0, 1.0});
  CHECK(two[0].A == 1.0);
  CHECK(two[0].B == 0.0);
  CHECK(two[1].A == 0.0);
  CHECK(two[1].B == 1.0);
  const auto mid = stirap_schedule({0.0, 0.5, 1.0});
  CHECK(mid[1].theta() == doctest::Approx(kPi / 4));
  const auto many = stirap_schedule(linear_grid(0.0, 1.0, 100));
  for (std::size_t i = 1; i < many.size(); ++i) CHECK(many[i].theta() > many[i - 1].theta());
}

TEST_CASE("qudit drive is uniform in the tilde frame") {
  for (int m = 2; m <= 5; ++m)
    for (double th : {0.0, 0.5, 1.2}) {
      const QuditDrive d = qudit_drive_matrix(th, 1.3, m);
      const double c2 = std::cos(th) * std::cos(th);
      CHECK(max_abs(d.restricted - Mat::Constant(m, m, -1.3 * c2 / m)) < 1e-10);
      // the drive never leaves the allowed space
      Mat F(m + 1, m);
      for (int j = 0; j < m; ++j) F.col(j) = qudit_tilde_j(th, j, m);
      CHECK(max_abs(F * d.restricted * F.adjoint() - d.full) < 1e-12);
    }
  CHECK(qudit_drive_prefactor(2) == 0.5);
  CHECK_THROWS_AS(qudit_drive_prefactor(1), InputError);
}

TEST_CASE("pair drive agrees with the m = 4 qudit drive") {
  const Mat pair = pair_drive_matrix(0.0, 1.0);
  Mat frame(9, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) frame.col(a + 2 * b) = product_state({tilde_bit(0.0, a), tilde_bit(0.0, b)});
  CHECK(max_abs(frame.adjoint() * pair * frame - qudit_drive_matrix(0.0, 1.0, 4).restricted) < 1e-12);
  CHECK(max_abs(pair_drive_matrix(kPi / 2, 1.0)) < 1e-30);
  CHECK(max_abs(pair_drive_matrix(0.4, 0.0)) == 0.0);
  const auto ev = oracle::hermitian_eigenvalues(pair_drive_matrix(0.4, 1.0));
  CHECK(std::count_if(ev.begin(), ev.end(), [](double v) { return std::abs(v) > 1e-12; }) == 1);
}

TEST_CASE("biased Z coefficients reproduce direct sandwiches") {
  const Eigen::VectorXcd z = z_values().cast<cplx>();
  for (double phi : linear_grid(0.1, 1.4, 7))
    for (double th : linear_grid(0.0, kPi / 2, 9)) {
      const BiasCoefficients b = biased_Z_coefficients(phi, th);
      const Vec t0 = tilde_bit(th, 0, phi), t1 = tilde_bit(th, 1, phi);
      auto zz = [&](const Vec& a, const Vec& c) { return (a.adjoint() * z.asDiagonal() * c)(0).real(); };
      CHECK(std::abs(zz(t0, t0) - (b.b1 + b.bz)) < 1e-10);
      CHECK(std::abs(zz(t1, t1) - (b.b1 - b.bz)) < 1e-10);
      CHECK(std::abs(zz(t0, t1) - b.bx) < 1e-10);
    }
  const BiasCoefficients u = biased_Z_coefficients(kUnbiased, 0.8);
  CHECK(std::abs(u.b1) < 1e-15);
  CHECK(std::abs(u.bx) < 1e-15);
  CHECK(u.bz == doctest::Approx(std::sin(0.8)));
  const BiasCoefficients e = biased_Z_coefficients(0.3, kPi / 2);
  CHECK(std::abs(e.b1) < 1e-15);
  CHECK(std::abs(e.bx) < 1e-15);
}

TEST_CASE("bias correction removes the single-body cross terms") {
  const double J = 0.7, th = 0.9;
  const std::vector<double> phis{0.5, 1.1};
  IsingProblem p;
  p.h = {0.0, 0.0};
  p.J = Eigen::MatrixXd::Zero(2, 2);
  p.J(0, 1) = p.J(1, 0) = J;
  const SpaceSpec s(2);
  const Mat H = ising_hamiltonian(p, s) + bias_correction_hamiltonian(p, phis, th, s);

  Mat frame(9, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      frame.col(a + 2 * b) = product_state({tilde_bit(th, a, phis[0]), tilde_bit(th, b, phis[1])});
  const BiasCoefficients c0 = biased_Z_coefficients(phis[0], th), c1 = biased_Z_coefficients(phis[1], th);
  Mat B0(2, 2), B1(2, 2);
  B0 << c0.bz, c0.bx, c0.bx, -c0.bz;
  B1 << c1.bz, c1.bx, c1.bx, -c1.bz;
  const Mat expected = J * oracle::kron(B1, B0) - J * c0.b1 * c1.b1 * Mat::Identity(4, 4);
  CHECK(max_abs(frame.adjoint() * H * frame - expected) < 1e-12);
}

TEST_CASE("bias lower bound is zero without couplings") {
  IsingProblem p = IsingProblem::fields({0.3, -0.2});
  CHECK(bias_alpha_lower_bound(p, {0.4, 0.6}) >= 0.0);
  CHECK_THROWS_AS(bias_alpha_lower_bound(p, {0.4}), InputError);
}
