#pragma once

#include <functional>
#include <vector>

namespace levypen {

// Gaver-Stehfest coefficients for an even number of terms n. The alternating
// sums blow up like 10^{0.7 n}, so the whole computation runs in long double;
// transforms evaluated to long double accuracy support n = 18 (about nine
// significant digits for the ladder-bundle originals), while transforms that
// are only double-accurate should stay at n <= 14.
const std::vector<long double>& stehfest_coefficients(int n);

// Real-axis Laplace inversion: given F(lambda) on the positive real axis,
// approximate f(x) = L^{-1}[F](x) at x > 0.
double gs_invert(const std::function<long double(long double)>& transform,
                 double x, int n = 18);

}  // namespace levypen
