#ifndef CDGA_VERSION_HPP
#define CDGA_VERSION_HPP

namespace cdga {
inline constexpr const char* version = "0.1.0";
}

#endif  // CDGA_VERSION_HPP
