#pragma once

namespace qcrb {

inline constexpr const char* kToolName = "qcrb";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace qcrb
