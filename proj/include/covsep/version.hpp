#pragma once

#include <string_view>

namespace covsep {

inline constexpr std::string_view kToolName = "covsep";
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace covsep
