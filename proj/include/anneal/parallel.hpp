#pragma once

#include <cstddef>
#include <functional>

namespace anneal {

// Shared-memory parallel-map capability handed down from the CLI (or tests).
// Tasks are indexed 0..n-1 and must write only to their own slots; the
// result of a run is therefore independent of the worker count.
class Parallel {
  public:
    // workers = 0 resolves ANNEAL_WORKERS, then hardware concurrency.
    explicit Parallel(int workers = 0);

    int workers() const { return workers_; }

    void run(std::size_t n, const std::function<void(std::size_t)>& task) const;

    static Parallel sequential() { return Parallel(1); }

  private:
    int workers_;
};

}  // namespace anneal
