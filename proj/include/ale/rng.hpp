#ifndef ALE_RNG_HPP
#define ALE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace ale {

/// Seedable random source with fully specified output transforms, so the
/// same seed yields the same bytes on every platform and standard library.
/// Raw stream: mt19937_64. Uniforms take the top 53 bits; normals use the
/// Box-Muller cosine branch, one draw per call, no cached spare.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64+boxmuller-v1";

  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on (0, 1]; never returns 0, safe under log().
  double uniform01() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal(double mean = 0.0, double sd = 1.0) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    return mean + sd * z;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ale

#endif  // ALE_RNG_HPP
