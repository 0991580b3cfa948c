#pragma once

namespace mzop {
inline constexpr const char* kVersion = "0.1.0";
}
