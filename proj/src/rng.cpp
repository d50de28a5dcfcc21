#include "gsp/rng.hpp"

#include <cmath>
#include <numbers>

namespace gsp {

namespace {

double box_muller(double u1, double u2) {
  // u1 in (0, 1]
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

double Rng::normal() noexcept {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return box_muller(u1, u2);
}

double Rng::normal_at(std::uint64_t key, std::uint64_t counter) noexcept {
  const double u1 = 1.0 - uniform_at(key, 2 * counter);
  const double u2 = uniform_at(key, 2 * counter + 1);
  return box_muller(u1, u2);
}

std::uint64_t Rng::below(std::uint64_t n) noexcept {
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace gsp
