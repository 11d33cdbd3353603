#pragma once

namespace nbhd {
inline constexpr const char* kEngineVersion = "0.1.0";
}
