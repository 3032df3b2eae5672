#pragma once

namespace zetafrac {

inline constexpr double pi_d = 3.14159265358979323846;
inline constexpr double two_pi_d = 6.28318530717958647693;

}  // namespace zetafrac
