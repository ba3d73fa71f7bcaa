#pragma once

namespace primlat {
inline constexpr const char* kVersion = "0.1.0";
}
