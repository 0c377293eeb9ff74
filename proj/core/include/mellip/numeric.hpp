#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mellip {

// Error categories surfaced to the CLI as distinct exit codes.
enum class errc {
  invalid_input,
  parse_error,
  cap_exceeded,
  oracle_inconsistency,
  unsupported_rounding,
  insufficient_resolution,
  precondition_violated,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

// Compensated (Kahan) accumulator. Used for every sum over grid points so
// that results are reproducible bit-for-bit in the fixed point order.
class KahanSum {
 public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Standard normal CDF mass of the interval [(z-1/2)/s, (z+1/2)/s], evaluated
// through erf/erfc so that far tail cells keep full relative accuracy.
double normal_cell_mass(long long z, double s);

// Counter-based pseudo-random stream: value(i) depends only on (seed, i), so
// any evaluation schedule produces identical output.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  // Uniform in (0,1).
  double uniform(std::uint64_t counter) const;
  // Standard normal via Box-Muller on counters (2*counter, 2*counter+1).
  double normal(std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
};

// Halton low-discrepancy value in [0,1): digit-reversal of `index` in the
// given prime base. Index-addressable, hence deterministic under any schedule.
double halton(std::uint64_t index, unsigned base);

// First n odd primes-ish bases for Halton sequences (2,3,5,7,...).
unsigned halton_base(unsigned dimension_index);

}  // namespace mellip
