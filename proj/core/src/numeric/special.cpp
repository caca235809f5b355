#include "qgraph/numeric/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace qgraph::numeric {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lgamma_right(cplx z) {
  // valid for Re z >= 1/2
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

cplx sin_pi_over_pi(cplx z) { return std::sin(std::numbers::pi * z) / std::numbers::pi; }

cplx lgamma(cplx z) {
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(std::numbers::pi) - std::log(std::sin(std::numbers::pi * z)) -
           lgamma_right(1.0 - z);
  }
  return lgamma_right(z);
}

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return {0.0, 0.0};
  if (z.imag() == 0.0) return {1.0 / std::tgamma(z.real()), 0.0};
  return std::exp(-lgamma(z));
}

cplx gamma_ratio(cplx a, cplx b) {
  if (is_nonpositive_integer(b)) return {0.0, 0.0};
  if (a.imag() == 0.0 && b.imag() == 0.0) {
    const double ga = std::tgamma(a.real());
    const double gb = std::tgamma(b.real());
    if (std::isfinite(ga) && std::isfinite(gb)) return {ga / gb, 0.0};
  }
  return std::exp(lgamma(a) - lgamma(b));
}

}  // namespace qgraph::numeric
