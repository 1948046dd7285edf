#pragma once

#include <string>

#include "vis3/io.hpp"

#ifndef VIS3_FIXTURE_DIR
#error "VIS3_FIXTURE_DIR must be defined"
#endif

namespace vis3::test {

inline std::string fixture_path(const std::string& name) { return std::string(VIS3_FIXTURE_DIR) + "/" + name; }

inline TernaryCubic fixture_cubic(const std::string& name) { return io::read_cubic(fixture_path(name + ".json")); }

inline TernaryCubic fermat() { return make_cubic({1, 0, 0, 0, 0, 0, 1, 0, 0, 1}); }
inline TernaryCubic xyz_cubic() { return make_cubic({0, 0, 0, 0, 1, 0, 0, 0, 0, 0}); }

}  // namespace vis3::test
