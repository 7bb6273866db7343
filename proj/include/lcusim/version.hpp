#pragma once

namespace lcusim {

inline constexpr const char* version = "0.1.0";

}
