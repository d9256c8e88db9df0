// Serial reference versus OpenMP kernels on the bundled instance.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <omp.h>

#include "zeno/analysis.hpp"
#include "zeno/constraints.hpp"
#include "zeno/evolution.hpp"
#include "zeno/states.hpp"

using namespace zeno;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int steps = argc > 1 ? std::atoi(argv[1]) : 200;
  const CnfFormula f = load_bundled_instance();
  const SpaceSpec spec(5);
  const SweepModel model(spec, clause_entries(f, spec), 1.0);
  Schedule sch;
  sch.steps = steps;
  const std::vector<double> times{1.0, 10.0, 100.0, 1000.0};
  const auto grid = linear_grid(0.0, kPi / 2, 64);
  const GeneratorBuilder builder = [&](double th) { return model.generator(th); };

  std::printf("threads available: %d, steps: %d\n", omp_get_max_threads(), steps);
  std::printf("%-22s %10s %10s %8s\n", "kernel", "serial[s]", "omp[s]", "speedup");
  double a_ser = 0, a_par = 0;
  std::vector<Trajectory> ts, tp;
  a_ser = seconds([&] { ts = dissipative_scan(model, TritString(5, 0), times, sch, Exec::serial); });
  a_par = seconds([&] { tp = dissipative_scan(model, TritString(5, 0), times, sch, Exec::parallel); });
  std::printf("%-22s %10.3f %10.3f %8.2f\n", "dissipative_scan", a_ser, a_par, a_ser / a_par);

  double b_ser = seconds([&] { spectrum_vs_theta(builder, grid, SpectrumQuantity::magnitude, Exec::serial); });
  double b_par = seconds([&] { spectrum_vs_theta(builder, grid, SpectrumQuantity::magnitude, Exec::parallel); });
  std::printf("%-22s %10.3f %10.3f %8.2f\n", "spectrum_vs_theta", b_ser, b_par, b_ser / b_par);

  double diff = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) diff = std::max(diff, std::abs(ts[i].final_success - tp[i].final_success));
  std::printf("max |serial - omp| final success: %.3g\n", diff);
  return diff == 0.0 ? 0 : 1;
}
