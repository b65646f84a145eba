// constants.hpp — shared mathematical constants

#pragma once

namespace spinbath {

inline constexpr double pi = 3.14159265358979323846;

// Riemann zeta values entering the bath statistics; closed forms, no runtime
// summation.  zeta4 = pi^4/90.
inline constexpr double zeta3 = 1.2020569031595942854;
inline constexpr double zeta4 = 1.0823232337111381916;

inline constexpr double ln2 = 0.69314718055994530942;

} // namespace spinbath
