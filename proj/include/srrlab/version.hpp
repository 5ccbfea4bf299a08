#pragma once

namespace srrlab {

inline constexpr const char* kVersion = "1.0.0";

} // namespace srrlab
