#pragma once

namespace dsop {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dsop
