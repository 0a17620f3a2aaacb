#include "fade/fractional_calculus.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/lanczos.hpp>

namespace fade {

namespace {

// Published Lanczos approximation with 13 terms tuned for 53-bit doubles.
using Lanczos = boost::math::lanczos::lanczos13m53;

// Largest argument with a finite double Gamma value.
constexpr double kGammaOverflow = 171.62437695630271;

}  // namespace

double gamma(double z) {
    if (!(z > 0.0)) {
        throw DomainError("gamma: argument must be positive, got " + std::to_string(z));
    }
    if (z > kGammaOverflow) {
        throw NumericalError("gamma: Gamma(" + std::to_string(z) + ") overflows double");
    }
    if (z < 1.0) return gamma(z + 1.0) / z;
    if (z == std::floor(z) && z <= 23.0) {
        // (z-1)! is exact in double up to 22!.
        double factorial = 1.0;
        for (double i = 2.0; i < z; i += 1.0) factorial *= i;
        return factorial;
    }
    // Gamma(z) = L(z) (z + g - 1/2)^(z - 1/2) e^{-(z + g - 1/2)}
    const double zgh = z + Lanczos::g() - 0.5;
    const double sum = Lanczos::lanczos_sum(z);
    double value;
    if (z < 100.0) {
        value = sum * std::pow(zgh, z - 0.5) / std::exp(zgh);
    } else {
        // Split the power so it cannot overflow before the exponential divides it.
        const double half_power = std::pow(zgh, 0.5 * (z - 0.5));
        value = sum * (half_power / std::exp(zgh)) * half_power;
    }
    if (!std::isfinite(value)) {
        throw NumericalError("gamma: Gamma(" + std::to_string(z) + ") overflows double");
    }
    return value;
}

double gamma_ratio(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainError("gamma_ratio: arguments must be positive");
    }
    if (a < 150.0 && b < 150.0) return gamma(a) / gamma(b);
    return std::exp(std::lgamma(a) - std::lgamma(b));
}

}  // namespace fade
