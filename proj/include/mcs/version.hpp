#pragma once

namespace mcs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mcs
