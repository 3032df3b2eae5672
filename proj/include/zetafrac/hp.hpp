#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace zetafrac {

// 50-digit software float for the few places where double (or even
// double-double) is not enough: rational classification of alpha and
// reference values inside tests.  Header-only, no link dependency.
using hp = boost::multiprecision::cpp_bin_float_50;

inline double hp_to_double(const hp& x) { return static_cast<double>(x); }

inline const hp& hp_pi() {
    static const hp v = boost::math::constants::pi<hp>();
    return v;
}

}
