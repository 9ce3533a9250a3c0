#pragma once

namespace projwalk {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace projwalk
