#ifndef HYPTESS_RNG_HPP
#define HYPTESS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

// Counter-based random stream keyed by (seed, stream). Every replicate, Monte
// Carlo batch, and worker gets its own stream id, so results do not depend on
// thread scheduling and never share state. The generator is the splitmix64
// counter sequence; all variate transforms are implemented here so output
// bytes do not depend on any standard-library distribution implementation.
namespace hyptess {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream)
      : state_(detail::mix64(detail::mix64(seed) ^
                             detail::mix64(stream * 0xda942042e4dd58b5ull + 1))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on [0,1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on [a,b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Index uniform on {0,...,n-1}.
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  // Standard normal via Box-Muller; the spare value is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Exact Poisson by Knuth's product method. Fine for the desk-scale means
  // used here; exp(-mean) underflows around mean ~ 700, so refuse beyond.
  int poisson(double mean) {
    if (mean < 0.0 || mean > 700.0)
      throw std::invalid_argument("poisson mean out of supported range [0,700]");
    const double limit = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Fixed stream-id namespaces so independent uses of the same replicate seed
// never collide.
namespace stream {
inline constexpr std::uint64_t kProcessSample = 0x01;
inline constexpr std::uint64_t kSandwich = 0x02;
inline constexpr std::uint64_t kCertify = 0x03;
inline constexpr std::uint64_t kQuadratureMC = 0x04;
inline constexpr std::uint64_t kConditionalEvent = 0x05;
}  // namespace stream

}  // namespace hyptess

#endif
