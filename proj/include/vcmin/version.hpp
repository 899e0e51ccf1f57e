#pragma once

namespace vcmin {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace vcmin
