// version.hpp

#pragma once

namespace spinbath {

inline constexpr const char* version = "0.1.0";

} // namespace spinbath
