#pragma once

namespace udcert {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace udcert
