/*
   Copyright 2026 The sid Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cmath>
#include <vector>

namespace sid::detail {

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth)
{
    const double m = 0.5 * (a + b);
    const double flm = f(0.5 * (a + m));
    const double frm = f(0.5 * (m + b));
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson on [a, b] with a relative tolerance; a 16-panel coarse
/// pass fixes the absolute error budget.
template <class F>
double integrate(const F& f, double a, double b, double rel_tol)
{
    constexpr int kPanels = 16;
    const double width = (b - a) / kPanels;
    std::vector<double> fx(2 * kPanels + 1);
    for (int i = 0; i <= 2 * kPanels; ++i) fx[i] = f(a + 0.5 * width * i);
    double coarse = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        coarse += width / 6.0 * (fx[2 * i] + 4.0 * fx[2 * i + 1] + fx[2 * i + 2]);
    }
    const double tol = rel_tol * std::abs(coarse) / kPanels;
    double total = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        const double lo = a + width * i;
        const double whole = width / 6.0 * (fx[2 * i] + 4.0 * fx[2 * i + 1] + fx[2 * i + 2]);
        total += adaptive_simpson(f, lo, lo + width, fx[2 * i], fx[2 * i + 1], fx[2 * i + 2], whole,
                                  tol, 40);
    }
    return total;
}

}  // namespace sid::detail
