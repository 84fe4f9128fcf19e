#pragma once

#include <random>

#include "qpj/model.hpp"

namespace qpj::test {

// Fixed-seed generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed = 20240501) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  cplx complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }
  TorusPoint point(int dim) {
    TorusPoint x(static_cast<std::size_t>(dim));
    for (auto& xi : x) xi = uniform(0.0, 1.0);
    return x;
  }
  JacobiModel preset() {
    switch (integer(0, 2)) {
      case 0: return presets::free_model();
      case 1: return presets::almost_mathieu(uniform(0.1, 1.5));
      default: return presets::singular_harper(uniform(0.1, 1.5));
    }
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline const double kSqrt5 = std::sqrt(5.0);
inline const double kFreeM = (-3.0 + kSqrt5) / 2.0;                // m_-(x, 3) for the free model
inline const double kFreeL = std::log((3.0 + kSqrt5) / 2.0);       // L at E = 3

}  // namespace qpj::test
