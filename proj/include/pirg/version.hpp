#pragma once

namespace pirg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pirg
