#pragma once

namespace egap {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace egap
