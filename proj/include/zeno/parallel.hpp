#pragma once

#include <functional>

#include "zeno/hilbert.hpp"

namespace zeno {

// serial is the reference path kept for testing; parallel uses OpenMP.
enum class Exec { serial, parallel };

int worker_count(Exec exec);

// Eigendecomposes build(k) for k = 0..steps-1 and hands them to consume in order.
// In parallel mode a block of steps is diagonalised concurrently before being consumed.
void for_each_step_eigensystem(int steps, const std::function<Mat(int)>& build,
                               const std::function<void(int, const Eigensystem&)>& consume, Exec exec);

// Runs body(i) for i = 0..count-1, concurrently in parallel mode.
void parallel_for(int count, const std::function<void(int)>& body, Exec exec);

}  // namespace zeno
