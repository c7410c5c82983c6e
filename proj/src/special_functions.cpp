#include "d2d/special_functions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "d2d/errors.hpp"

namespace d2d {

double exp_e1(double x) {
    if (!(x > 0.0))
        throw NumericFailureError("exp_e1 requires x > 0, got " + std::to_string(x));

    if (x < 1.0) {
        // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!)
        constexpr double kEulerGamma = 0.57721566490153286060;
        double sum = 0.0;
        double term = 1.0;
        for (int k = 1; k <= 40; ++k) {
            term *= -x / k;
            double contribution = -term / k;
            sum += contribution;
            if (std::abs(contribution) < 1e-18 * std::abs(sum)) break;
        }
        return std::exp(x) * (-kEulerGamma - std::log(x) + sum);
    }

    // Continued fraction for e^x E1(x): 1/(x+1 - 1/(x+3 - 4/(x+5 - ...))),
    // evaluated with the modified Lentz algorithm.
    constexpr double kFloor = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / kFloor;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < kFloor) d = kFloor;
        c = b + a / c;
        if (std::abs(c) < kFloor) c = kFloor;
        d = 1.0 / d;
        double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) return h;
    }
    return h;  // converged to machine precision for all practical x >= 1
}

}  // namespace d2d
