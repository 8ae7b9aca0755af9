#pragma once

namespace swarmbmc {
inline constexpr const char* kVersion = "0.1.0";
}
