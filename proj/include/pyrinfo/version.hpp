#pragma once

namespace pyrinfo {

inline constexpr const char* version = "0.1.0";

}
