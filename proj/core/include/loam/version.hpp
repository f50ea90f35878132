#pragma once

namespace loam {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace loam
