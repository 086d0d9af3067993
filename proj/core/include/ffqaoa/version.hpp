#ifndef FFQAOA_VERSION_HPP
#define FFQAOA_VERSION_HPP

namespace ffqaoa {

inline constexpr const char* version_string = "0.1.0";

}

#endif
