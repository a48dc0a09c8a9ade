#pragma once

namespace breather {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace breather
