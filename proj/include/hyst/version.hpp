#pragma once

namespace hyst {

inline constexpr const char* kVersion = "0.1.0";

}
