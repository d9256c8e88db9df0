#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "zeno/analysis.hpp"
#include "zeno/error.hpp"
#include "zeno/states.hpp"

using namespace zeno;

TEST_CASE("linear grid") {
  const auto g = linear_grid(0.0, 1.0, 5);
  CHECK(g.size() == 5);
  CHECK(g[2] == 0.5);
  CHECK(g.back() == 1.0);
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), InputError);
}

TEST_CASE("curve tracking keeps lines through a crossing") {
  // y = x crosses the flat line y = 0.5; sorted rows swap after the crossing
  const std::vector<double> xs{0.1, 0.35, 0.6, 0.85};
  Eigen::MatrixXd sorted(4, 2);
  for (int i = 0; i < 4; ++i) {
    sorted(i, 0) = std::min(xs[i], 0.5);
    sorted(i, 1) = std::max(xs[i], 0.5);
  }
  const Eigen::MatrixXd t = track_curves(sorted);
  for (int i = 0; i < 4; ++i) {
    CHECK(t(i, 0) == xs[i]);
    CHECK(t(i, 1) == 0.5);
  }
}

TEST_CASE("bundled decay spectrum has the 1/15/227 split") {
  const CnfFormula f = load_bundled_instance();
  const auto s = spectrum_vs_theta([&](double th) { return formula_generator(f, th); }, linear_grid(0.0, 0.3, 4),
                                   SpectrumQuantity::magnitude);
  CHECK(s.lowest == 1);
  CHECK(s.cluster == 15);
  CHECK(s.rest == 227);
  for (Eigen::Index r = 0; r < s.sorted.rows(); ++r) CHECK(s.sorted(r, 0) < 1e-9);
  CHECK(s.sorted(1, 1) > 1e-9);
}

TEST_CASE("spectrum values agree with the Jacobi oracle") {
  const CnfFormula f = planted_generator(3, 2);
  const auto s = spectrum_vs_theta([&](double th) { return formula_generator(f, th); }, {0.7});
  const auto ref = oracle::hermitian_eigenvalues(formula_generator(f, 0.7));
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(s.sorted(0, Eigen::Index(i)) == doctest::Approx(ref[i]).epsilon(1e-10));
}

TEST_CASE("gap is non-negative") {
  const SpaceSpec sp(2);
  const Mat off = offset_hamiltonian({0.1}, sp);
  const auto gap = gap_vs_theta([&](double th) { return Mat(forbidden_generator(unit_forbidden_entries(th, sp), sp) + off); },
                                linear_grid(0.0, kPi / 2, 10));
  for (double g : gap) CHECK(g >= 0.0);
}

TEST_CASE("satisfiability witness") {
  const CnfFormula f = load_bundled_instance();
  CHECK(satisfiability_witness(f) == Verdict::satisfiable);
  CHECK(satisfiability_witness(unsatisfiable_variant(f)) == Verdict::unsatisfiable);
  CHECK(to_string(Verdict::unsatisfiable) == "unsatisfiable");
  CHECK_THROWS_AS(satisfiability_witness(f, 0.0), InputError);
}

TEST_CASE("exact projection is limited to small systems") {
  CHECK_THROWS_AS(projected_effective_hamiltonian(0.3, IsingProblem::fields(std::vector<double>(7, 0.1)), {0.0}),
                  UnsupportedError);
}

TEST_CASE("one-hot orthogonalisation") {
  for (int n : {2, 3, 5})
    for (double th : {0.05, 0.4, 1.0, kPi / 2}) {
      const Mat bar = one_hot_states(n, th);
      CHECK(max_abs(bar.adjoint() * bar - Mat::Identity(n, n)) < 1e-10);
      const OneHotCoefficients k = one_hot_coefficients(n, th);
      const double c1 = 1.0 + (n - 2) * k.overlap;
      CHECK(std::abs(k.overlap - 2 * k.a * c1 + k.a * k.a * k.b) < 1e-12);
      // raw overlap straight from the states
      const Mat raw = one_hot_raw_states(n, th);
      CHECK(std::abs(raw.col(0).dot(raw.col(1)) - k.overlap) < 1e-12);
      // normalisation of phi_j - a sum_{k != j} phi_k
      const Vec v = raw.col(0) - k.a * (raw.rowwise().sum() - raw.col(0));
      CHECK(v.norm() == doctest::Approx(k.normalisation).epsilon(1e-10));
    }
  CHECK(std::abs(one_hot_coefficients(5, kPi / 2).a) < 1e-30);
  CHECK_THROWS_AS(one_hot_coefficients(5, 0.0), InputError);
  CHECK_THROWS_AS(one_hot_coefficients(1, 0.3), InputError);
}
