#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ptope {

/// Execution policy for the data-parallel kernels. Both policies produce
/// bitwise identical results: work is split into fixed blocks, block
/// results are folded in block order either way.
enum class Exec { serial, parallel };

inline constexpr std::size_t kExecBlock = 1024;

/// Sum of term(i) for i in [0, count), reduced blockwise. The fold order
/// is independent of the policy and of the thread count.
template <class F>
double blocked_sum(std::size_t count, Exec exec, F&& term) {
  if (count == 0) return 0.0;
  const std::size_t blocks = (count + kExecBlock - 1) / kExecBlock;
  std::vector<double> partial(blocks, 0.0);

  auto run_block = [&](std::size_t b) {
    const std::size_t lo = b * kExecBlock;
    const std::size_t hi = std::min(count, lo + kExecBlock);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[b] = acc;
  };

#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
      run_block(static_cast<std::size_t>(b));
    }
  } else
#endif
  {
    (void)exec;
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  }

  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

struct MaxResult {
  double value = 0.0;
  std::size_t index = 0;
};

/// Largest term(i) over [0, count) with the smallest attaining index.
/// Ties and the scan order are policy-independent.
template <class F>
MaxResult blocked_max(std::size_t count, Exec exec, F&& term) {
  if (count == 0) throw std::invalid_argument("max of an empty range");
  const std::size_t blocks = (count + kExecBlock - 1) / kExecBlock;
  std::vector<MaxResult> partial(blocks);

  auto run_block = [&](std::size_t b) {
    const std::size_t lo = b * kExecBlock;
    const std::size_t hi = std::min(count, lo + kExecBlock);
    MaxResult best{term(lo), lo};
    for (std::size_t i = lo + 1; i < hi; ++i) {
      double v = term(i);
      if (v > best.value) best = {v, i};
    }
    partial[b] = best;
  };

#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
      run_block(static_cast<std::size_t>(b));
    }
  } else
#endif
  {
    (void)exec;
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  }

  MaxResult best = partial[0];
  for (std::size_t b = 1; b < blocks; ++b) {
    if (partial[b].value > best.value) best = partial[b];
  }
  return best;
}

}  // namespace ptope
