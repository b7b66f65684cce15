#pragma once

namespace tvtv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tvtv
