#include "mellip/numeric.hpp"

#include <cmath>

namespace mellip {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double normal_cell_mass(long long z, double s) {
  if (z < 0) z = -z;
  const double lo = (static_cast<double>(z) - 0.5) / s;
  const double hi = (static_cast<double>(z) + 0.5) / s;
  if (z == 0) {
    // symmetric interval [-hi, hi]: mass = erf(hi/sqrt(2))
    return std::erf(hi * kInvSqrt2);
  }
  // one-sided interval: difference of complementary CDFs, no cancellation of
  // like magnitudes because erfc decays by a large factor across the cell
  return 0.5 * (std::erfc(lo * kInvSqrt2) - std::erfc(hi * kInvSqrt2));
}

double CounterRng::uniform(std::uint64_t counter) const {
  std::uint64_t x = splitmix64(seed_ ^ splitmix64(counter + 0x51a3c6ef2b9dULL));
  // 53-bit mantissa, shifted into (0,1)
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t counter) const {
  const double u1 = uniform(2 * counter);
  const double u2 = uniform(2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

double halton(std::uint64_t index, unsigned base) {
  double f = 1.0;
  double r = 0.0;
  std::uint64_t i = index;
  while (i > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

unsigned halton_base(unsigned dimension_index) {
  static const unsigned primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                    31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  if (dimension_index >= sizeof(primes) / sizeof(primes[0]))
    throw error(errc::invalid_input, "halton dimension too large");
  return primes[dimension_index];
}

}  // namespace mellip
