#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace csf {

// splitmix64: cheap, well-mixed 64-bit hash used to derive independent
// substream seeds from (seed, index) pairs.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ull));
}

// Gaussian draws via mt19937_64 + explicit Box-Muller.
// std::normal_distribution's sequence is implementation-defined, which would
// break byte-identical golden files across standard libraries; this stream is
// fully pinned down.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0,1], u2 in [0,1)
    double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1p-53;
    double u2 = static_cast<double>(gen_() >> 11) * 0x1p-53;
    double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace csf
