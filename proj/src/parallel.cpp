#include "zeno/parallel.hpp"

#include <algorithm>
#include <exception>
#include <vector>

#include <omp.h>

namespace zeno {

int worker_count(Exec exec) { return exec == Exec::parallel ? omp_get_max_threads() : 1; }

namespace {

// Exceptions must not cross the OpenMP region boundary.
void run_guarded(int count, const std::function<void(int)>& body) {
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace

void parallel_for(int count, const std::function<void(int)>& body, Exec exec) {
  if (exec == Exec::serial || count < 2) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  run_guarded(count, body);
}

void for_each_step_eigensystem(int steps, const std::function<Mat(int)>& build,
                               const std::function<void(int, const Eigensystem&)>& consume, Exec exec) {
  if (exec == Exec::serial) {
    for (int k = 0; k < steps; ++k) consume(k, hermitian_eigendecomposition(build(k)));
    return;
  }
  const int block = std::max(8, 4 * worker_count(exec));
  std::vector<Eigensystem> buf(block);
  for (int start = 0; start < steps; start += block) {
    const int len = std::min(block, steps - start);
    run_guarded(len, [&](int i) { buf[i] = hermitian_eigendecomposition(build(start + i)); });
    for (int i = 0; i < len; ++i) consume(start + i, buf[i]);
  }
}

}  // namespace zeno
