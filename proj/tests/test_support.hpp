#ifndef NNSC_TEST_SUPPORT_HPP_
#define NNSC_TEST_SUPPORT_HPP_

#include <cmath>
#include <cstdint>
#include <random>

#include "nnsc/error.hpp"

namespace nnsc::testing {

// Seeded generator for property tests; every case is reproducible from the
// seed printed on failure.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed), seed_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  std::uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  throw std::logic_error("expected an nnsc::Error");
}

}  // namespace nnsc::testing

#endif  // NNSC_TEST_SUPPORT_HPP_
