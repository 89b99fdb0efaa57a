#pragma once

namespace capsys {
inline constexpr const char* kVersion = "0.1.0";
}
