#pragma once

#include <complex>

namespace qgraph::numeric {

using cplx = std::complex<double>;

/// Principal branch of log Gamma(z) for complex z (Lanczos, g = 7).
cplx lgamma(cplx z);

/// 1/Gamma(z); entire, exactly zero at the non-positive integers.
cplx rgamma(cplx z);

/// Gamma(a)/Gamma(b) evaluated through log-Gamma. Returns 0 when b is a
/// pole of Gamma and a is not.
cplx gamma_ratio(cplx a, cplx b);

/// sin(pi z)/pi.
cplx sin_pi_over_pi(cplx z);

/// True when z is (numerically) a non-positive integer.
bool is_nonpositive_integer(cplx z);

}  // namespace qgraph::numeric
