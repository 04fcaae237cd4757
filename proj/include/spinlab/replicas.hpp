#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spinlab/errors.hpp"

namespace spinlab {

enum class Execution { serial, parallel };

struct FanOut {
  Execution mode = Execution::parallel;
  int jobs = 0;  // 0: OpenMP default (available hardware threads)
};

/// Integer counters produced by one replica. Summed element-wise, so the
/// total is independent of the order replicas finish in.
using Counters = std::vector<std::uint64_t>;

namespace detail {

template <class Kernel>
void run_one(Kernel& kernel, std::uint64_t r, std::vector<Counters>& out,
             std::vector<std::exception_ptr>& errors) {
  try {
    out[r] = kernel(r);
  } catch (...) {
    errors[r] = std::current_exception();
  }
}

[[noreturn]] inline void raise_replica(std::uint64_t r, std::uint64_t seed,
                                       const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const InvariantFailure& e) {
    throw ReplicaFailure(r, seed, e.what(), true);
  } catch (const ReplicaFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw ReplicaFailure(r, seed, e.what(), false);
  }
}

}  // namespace detail

/// Runs kernel(r) for r in [0, n) and returns the element-wise sum of the
/// counters. Every kernel must return the same number of counters. A failure
/// in any replica is rethrown (lowest index first) as ReplicaFailure.
template <class Kernel>
Counters run_replicas(std::uint64_t n, std::uint64_t seed, Kernel&& kernel, FanOut fan = {}) {
  std::vector<Counters> per_replica(n);
  std::vector<std::exception_ptr> errors(n);

  if (fan.mode == Execution::serial) {
    for (std::uint64_t r = 0; r < n; ++r) detail::run_one(kernel, r, per_replica, errors);
  } else {
#ifdef _OPENMP
    const int threads = fan.jobs > 0 ? fan.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(n); ++r) {
      detail::run_one(kernel, static_cast<std::uint64_t>(r), per_replica, errors);
    }
  }

  for (std::uint64_t r = 0; r < n; ++r) {
    if (errors[r]) detail::raise_replica(r, seed, errors[r]);
  }
  Counters total;
  for (std::uint64_t r = 0; r < n; ++r) {
    if (total.empty()) total.assign(per_replica[r].size(), 0);
    if (per_replica[r].size() != total.size()) {
      throw InvariantFailure("replica " + std::to_string(r) + " produced a different counter layout");
    }
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += per_replica[r][k];
  }
  return total;
}

}  // namespace spinlab
