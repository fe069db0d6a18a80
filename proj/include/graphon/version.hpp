#pragma once

namespace graphon {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace graphon
