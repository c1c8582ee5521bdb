#ifndef ALE_SYNTHETIC_HPP
#define ALE_SYNTHETIC_HPP

#include <cstdint>
#include <string>

#include "ale/dataset.hpp"

namespace ale {

/// Seeded synthetic families used throughout the test suite.
///
///   example1      two strongly collinear predictors on a diagonal segment:
///                 t ~ U[segment], x_j = t + N(0, predictor_noise^2) i.i.d.;
///                 response y = x1 + x2^2, noiseless.
///   example2      same predictors, y = x1 + x2^2 + N(0, response_noise^2).
///   gaussian_pair standard bivariate normal with correlation rho,
///                 y = x1 * x2.
///   product_cube  d independent U[-1, 1] predictors, y = prod_j x_j.
enum class GeneratorFamily { example1, example2, gaussian_pair, product_cube };

struct GeneratorSpec {
  GeneratorFamily family = GeneratorFamily::example1;
  std::size_t n = 200;
  std::uint64_t seed = 1;
  double rho = 0.5;               // gaussian_pair
  int d = 3;                      // product_cube
  double segment_lo = 0.0;        // example1/2
  double segment_hi = 1.0;
  double predictor_noise = 0.05;  // example1/2
  double response_noise = 0.1;    // example2
};

GeneratorFamily parse_generator_family(const std::string& tag);
const char* generator_family_tag(GeneratorFamily family);

/// Deterministic under the spec: identical spec (including seed) produces a
/// byte-identical dataset. Row draws are sequential in row order.
Dataset generate_synthetic(const GeneratorSpec& spec);

}  // namespace ale

#endif  // ALE_SYNTHETIC_HPP
