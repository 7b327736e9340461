#pragma once

namespace chernsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace chernsim
