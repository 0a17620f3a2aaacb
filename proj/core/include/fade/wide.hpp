#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace fade {

/// 113-bit significand float used wherever monomial expansions of the
/// Legendre basis are summed. The integer coefficients of phi_i reach ~1e27
/// at i = 32 and the alternating sums cancel to O(1).
using wide_real = boost::multiprecision::cpp_bin_float_quad;

}  // namespace fade
