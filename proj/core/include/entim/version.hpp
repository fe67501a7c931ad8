#ifndef ENTIM_VERSION_HPP
#define ENTIM_VERSION_HPP

namespace entim {

inline constexpr const char* kVersion = "0.1.0";

} // namespace entim

#endif
