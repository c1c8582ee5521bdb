#include "ale/synthetic.hpp"

#include <cmath>

#include "ale/rng.hpp"

namespace ale {

GeneratorFamily parse_generator_family(const std::string& tag) {
  if (tag == "example1") return GeneratorFamily::example1;
  if (tag == "example2") return GeneratorFamily::example2;
  if (tag == "gaussian-pair") return GeneratorFamily::gaussian_pair;
  if (tag == "product-cube") return GeneratorFamily::product_cube;
  fail("generator: unknown family '", tag, "' (expected example1, example2, gaussian-pair, product-cube)");
}

const char* generator_family_tag(GeneratorFamily family) {
  switch (family) {
    case GeneratorFamily::example1: return "example1";
    case GeneratorFamily::example2: return "example2";
    case GeneratorFamily::gaussian_pair: return "gaussian-pair";
    case GeneratorFamily::product_cube: return "product-cube";
  }
  return "?";
}

Dataset generate_synthetic(const GeneratorSpec& spec) {
  if (spec.n < 2) fail("generator: n must be >= 2, got ", spec.n);
  Rng rng(spec.seed);

  switch (spec.family) {
    case GeneratorFamily::example1:
    case GeneratorFamily::example2: {
      if (!(spec.segment_lo < spec.segment_hi)) fail("generator: empty segment range");
      const bool noisy = spec.family == GeneratorFamily::example2;
      Matrix x(spec.n, 2);
      std::vector<double> y(spec.n);
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double t = rng.uniform(spec.segment_lo, spec.segment_hi);
        const double x1 = t + rng.normal(0.0, spec.predictor_noise);
        const double x2 = t + rng.normal(0.0, spec.predictor_noise);
        x(i, 0) = x1;
        x(i, 1) = x2;
        y[i] = x1 + x2 * x2 + (noisy ? rng.normal(0.0, spec.response_noise) : 0.0);
      }
      return Dataset({"x1", "x2"}, std::move(x), std::move(y), "y");
    }
    case GeneratorFamily::gaussian_pair: {
      if (!(spec.rho > -1.0 && spec.rho < 1.0)) fail("generator: rho must lie in (-1, 1), got ", spec.rho);
      const double mix = std::sqrt(1.0 - spec.rho * spec.rho);
      Matrix x(spec.n, 2);
      std::vector<double> y(spec.n);
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        x(i, 0) = z1;
        x(i, 1) = spec.rho * z1 + mix * z2;
        y[i] = x(i, 0) * x(i, 1);
      }
      return Dataset({"x1", "x2"}, std::move(x), std::move(y), "y");
    }
    case GeneratorFamily::product_cube: {
      if (spec.d < 1) fail("generator: product-cube needs d >= 1, got ", spec.d);
      const std::size_t d = static_cast<std::size_t>(spec.d);
      Matrix x(spec.n, d);
      std::vector<double> y(spec.n, 1.0);
      std::vector<std::string> names(d);
      for (std::size_t j = 0; j < d; ++j) names[j] = "x" + std::to_string(j + 1);
      for (std::size_t i = 0; i < spec.n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          x(i, j) = rng.uniform(-1.0, 1.0);
          y[i] *= x(i, j);
        }
      }
      return Dataset(std::move(names), std::move(x), std::move(y), "y");
    }
  }
  fail("generator: unhandled family");
}

}  // namespace ale
