#pragma once

#include <complex>

namespace compana {

/// Gamma function of a complex argument.
///
/// Stirling series for log Gamma in long double, after shifting the argument
/// to |z| >= 20 with the recurrence; reflection covers Re z < 1/2. Working in
/// log form keeps the phase accurate when Im z is large. Relative error is
/// around 1e-16 on the strip 1/2 <= Re z <= 10, |Im z| <= 200.
///
/// Throws std::domain_error at the poles z = 0, -1, -2, ...
std::complex<double> complex_gamma(std::complex<double> z);

}  // namespace compana
