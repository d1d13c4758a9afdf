#pragma once

// 113-bit significand floating point for exact-mode inference. The monomial
// bistar densities lose most of their information in double once K >= 3.
// Needs GNU extensions (-std=gnu++20 -fext-numeric-literals) and libquadmath.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

namespace graphpencil {

using quad = boost::multiprecision::float128;

}  // namespace graphpencil
