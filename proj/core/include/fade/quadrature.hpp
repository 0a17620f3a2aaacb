#pragma once

#include <cstddef>
#include <vector>

#include "fade/wide.hpp"

namespace fade {

template <class Real>
struct QuadratureRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    Real integrate(F&& f) const {
        Real sum(0);
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

/// n-point Gauss-Legendre rule on [0,1]. Rules are built once per size and
/// cached; the returned reference stays valid for the program lifetime.
const QuadratureRule<double>& gauss_legendre_01(int n);

/// Same rule computed in 113-bit precision.
const QuadratureRule<wide_real>& gauss_legendre_01_wide(int n);

/// n-point Gauss-Jacobi rule on [0,1] for the weight (1-x)^a * x^b, a, b > -1
/// (Golub-Welsch). Not cached.
QuadratureRule<double> gauss_jacobi_01(int n, double a, double b);

}  // namespace fade
