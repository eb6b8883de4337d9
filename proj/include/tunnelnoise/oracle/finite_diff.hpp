#pragma once

#include <cmath>
#include <functional>

namespace tunnelnoise::oracle {

struct DerivativeEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Central differences at steps h, h/2, h/4 (h = rel_step |x|, or rel_step at
/// x = 0) combined by two rounds of Richardson extrapolation. The error
/// estimate is the spread between the two first-round extrapolants, which
/// tracks truncation error and, for noisy f, the noise floor (noise / h).
inline DerivativeEstimate finite_diff(const std::function<double(double)>& f, double x, double rel_step) {
    const double h = rel_step * (x != 0.0 ? std::abs(x) : 1.0);
    auto central = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    const double d3 = central(0.25 * h);
    const double r1 = d2 + (d2 - d1) / 3.0;
    const double r2 = d3 + (d3 - d2) / 3.0;
    return {r2 + (r2 - r1) / 15.0, std::abs(r2 - r1)};
}

}  // namespace tunnelnoise::oracle
