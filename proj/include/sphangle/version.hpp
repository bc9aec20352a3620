#pragma once

namespace sphangle {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace sphangle
