#pragma once

namespace zenodyn {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace zenodyn
