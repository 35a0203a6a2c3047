#pragma once

namespace covparam {

inline constexpr const char* version = "0.1.0";

}  // namespace covparam
