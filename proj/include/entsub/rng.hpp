#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace entsub {

// All randomness in the library flows from a single 64-bit seed.  Sub-streams
// (per start, per trial, per tensor) are derived by mixing the master seed
// with a stream counter, so results do not depend on the order in which the
// sub-streams are consumed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 0x9e3779b97f4a7c15ULL));
}

// Gaussian sampling is done with an explicit Box-Muller transform instead of
// std::normal_distribution, whose output sequence is implementation-defined;
// this keeps seeded results identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // in [0, 1)
    return std::generate_canonical<double, 53>(gen_);
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  std::complex<double> cnormal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace entsub
