#pragma once

namespace i4vlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace i4vlab
