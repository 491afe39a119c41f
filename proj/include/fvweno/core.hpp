#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fvweno {

using real = double;

using Vec3 = std::array<real, 3>;
using Int3 = std::array<int, 3>;

// Axis indices used throughout: 0 = x, 1 = y, 2 = z.
enum Axis : int { AxisX = 0, AxisY = 1, AxisZ = 2 };

inline const char* axis_name(int d) {
    static const char* names[3] = {"x", "y", "z"};
    return names[d];
}

// The two tangential axes of a face family, in ascending axis order.
// x-faces -> (y,z), y-faces -> (x,z), z-faces -> (x,y).
inline std::array<int, 2> tangential_axes(int d) {
    switch (d) {
        case 0: return {1, 2};
        case 1: return {0, 2};
        default: return {0, 1};
    }
}

class error : public std::runtime_error {
  public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool finite(real x) { return std::isfinite(x); }

}  // namespace fvweno
