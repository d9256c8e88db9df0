#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "zeno/error.hpp"
#include "zeno/hilbert.hpp"

using namespace zeno;

namespace {

Mat random_hermitian(int n, std::mt19937_64& rng, bool real = false) {
  std::normal_distribution<double> g;
  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = cplx(g(rng), real ? 0.0 : g(rng));
  return (A + A.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("space spec validates and sizes") {
  CHECK(SpaceSpec(5).dim() == 243);
  CHECK(SpaceSpec(2, 3).dim() == 16);
  CHECK(SpaceSpec(2, 3).undefined_level() == 3);
  CHECK_THROWS_AS(SpaceSpec(0), InputError);
  CHECK_THROWS_AS(SpaceSpec(2, 1), InputError);
}

TEST_CASE("basis index is little-endian and round-trips") {
  const SpaceSpec s(3);
  CHECK(basis_index({1, 0, 0}, s) == 1);
  CHECK(basis_index({0, 1, 0}, s) == 3);
  CHECK(basis_index({2, 2, 2}, s) == 26);
  for (std::size_t i = 0; i < s.dim(); ++i) CHECK(basis_index(trit_string(i, s), s) == i);
  CHECK_THROWS_AS(basis_index({3, 0, 0}, s), InputError);
  CHECK_THROWS_AS(basis_index({0, 0}, s), InputError);
}

TEST_CASE("embedding matches explicit Kronecker products") {
  std::mt19937_64 rng(3);
  const SpaceSpec s(3);
  const Mat a = random_hermitian(3, rng);
  for (int u = 0; u < 3; ++u) CHECK(max_abs(embed_local(a, {u}, s) - oracle::single_site(a, u, 3, 3)) < 1e-14);

  // two-unit operator on (2, 0): a on unit 2 and b on unit 0 as a product
  const Mat b = random_hermitian(3, rng);
  const Mat pair = oracle::kron(b, a);  // first listed unit (2) is the least significant digit
  const Mat expected = oracle::single_site(a, 2, 3, 3) * oracle::single_site(b, 0, 3, 3);
  CHECK(max_abs(embed_local(pair, {2, 0}, s) - expected) < 1e-14);
  CHECK_THROWS_AS(embed_local(a, {0, 0}, s), InputError);
}

TEST_CASE("eigendecomposition agrees with the Jacobi oracle") {
  std::mt19937_64 rng(11);
  for (bool real : {false, true}) {
    const Mat H = random_hermitian(7, rng, real);
    const Eigensystem es = hermitian_eigendecomposition(H);
    const auto ref = oracle::hermitian_eigenvalues(H);
    for (int i = 0; i < 7; ++i) CHECK(es.values(i) == doctest::Approx(ref[i]).epsilon(1e-12));
    CHECK(max_abs(es.vectors * es.values.cast<cplx>().asDiagonal() * es.vectors.adjoint() - H) < 1e-12);
  }
  Mat bad = Mat::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigendecomposition(bad), InputError);
}

TEST_CASE("kernel basis spans the null space") {
  Vec v(3);
  v << 1.0, cplx(0.0, 1.0), 0.0;
  const Mat G = v * v.adjoint();
  const Mat K = kernel_basis(G);
  CHECK(K.cols() == 2);
  CHECK(max_abs(G * K) < 1e-12);
  CHECK(max_abs(K.adjoint() * K - Mat::Identity(2, 2)) < 1e-12);
}

TEST_CASE("step propagators match the series exponential") {
  std::mt19937_64 rng(5);
  const Mat H = random_hermitian(6, rng);
  const Mat G = H * H;  // positive semidefinite
  Vec psi = Vec::Random(6);
  psi.normalize();
  const cplx i(0.0, 1.0);
  CHECK((evolve_step(psi, H, 0.7, StepMode::unitary) - oracle::expm(-i * 0.7 * H) * psi).norm() < 1e-11);
  CHECK((evolve_step(psi, G, 0.3, StepMode::decay) - oracle::expm(-0.3 * G) * psi).norm() < 1e-11);

  Mat cols(6, 2);
  cols << psi, psi;
  evolve_columns(cols, hermitian_eigendecomposition(H), {0.1, 2.0}, StepMode::unitary);
  CHECK((cols.col(0) - oracle::expm(-i * 0.1 * H) * psi).norm() < 1e-11);
  CHECK((cols.col(1) - oracle::expm(-i * 2.0 * H) * psi).norm() < 1e-11);
}

TEST_CASE("decay step never amplifies") {
  std::mt19937_64 rng(8);
  const Mat H = random_hermitian(5, rng);
  Mat G = H * H;
  const Eigensystem es = hermitian_eigendecomposition(G);
  // push the smallest eigenvalue to a tiny negative value, as roundoff would
  Eigensystem shifted = es;
  shifted.values(0) = -1e-14;
  Vec psi = es.vectors.col(0);
  CHECK(evolve_step(psi, shifted, 1e12, StepMode::decay).norm() <= 1.0 + 1e-12);
}
