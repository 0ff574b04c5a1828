#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace telsam {

// Deterministic splitmix64-based generator. The synthetic generator and the
// bernoulli sampler pin byte-identical output across runs and platforms, so
// all distributions are derived from uniform draws here instead of relying
// on implementation-defined std:: distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  uint64_t uniform_index(uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  bool bernoulli(double p) { return uniform() < p; }

  // Box-Muller without caching; two uniforms per draw keeps the consumption
  // pattern independent of call history.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  double exponential(double rate) {
    double u = uniform();
    if (u <= 0.0) u = 0x1.0p-53;
    return -std::log(u) / rate;
  }

  // Lognormal parameterized by its median (in the output unit) and the
  // log-space shape sigma.
  double lognormal_median(double median, double sigma_log) {
    return median * std::exp(sigma_log * normal());
  }

  // Knuth's method; fine for the small means used by the generator. Large
  // means fall back to a rounded normal approximation.
  int64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 64.0) {
      double draw = normal(mean, std::sqrt(mean));
      return draw < 0.0 ? 0 : static_cast<int64_t>(draw + 0.5);
    }
    const double limit = std::exp(-mean);
    int64_t count = -1;
    double product = 1.0;
    do {
      ++count;
      product *= uniform();
    } while (product > limit);
    return count;
  }

  // 16 lowercase hex chars; used for trace/span/log identifiers so that
  // lexicographic tie-breaking downstream behaves like a random order.
  std::string hex_id() {
    static const char* digits = "0123456789abcdef";
    uint64_t v = next_u64();
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
      out[static_cast<size_t>(i)] = digits[v & 0xf];
      v >>= 4;
    }
    return out;
  }

  // Derives an independent stream; used to decouple per-window draws from
  // the main sequence.
  Rng fork(uint64_t salt) {
    Rng child(state_ ^ (salt * 0xd6e8feb86659fd93ull + 0xa5a5a5a5a5a5a5a5ull));
    child.next_u64();
    return child;
  }

 private:
  uint64_t state_;
};

}  // namespace telsam
