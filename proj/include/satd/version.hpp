#pragma once

namespace satd {
inline constexpr const char* kVersion = "1.0.0";
}
