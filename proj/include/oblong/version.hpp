#pragma once

namespace oblong {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace oblong
