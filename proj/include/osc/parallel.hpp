#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace osc {

// Worker count: OSC_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n). Each index is processed exactly once; callers
// write results into index-addressed slots, so the merged output does not
// depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream seed for task `index` under `master`.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x9e3779b97f4a7c15ULL));
}

// mt19937_64 with a platform-independent uniform draw (53 random bits).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool coin() { return (engine_() >> 63) != 0; }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace osc
