#pragma once

#include <cmath>
#include <string>

#include "covsep/types.hpp"

namespace covsep::testing {

/// The known 8x8 integer covariance matrix of a bound-entangled state on a
/// (2, 2) system: ppt, minimally ppt, and not block diagonal. Its form
/// spectrum is {0, 3 - sqrt(3), 3, 3 + sqrt(3)}, each value twice.
inline RealMatrix known_bound_entangled_2x2() {
    RealMatrix g(8, 8);
    g << 2, 0, 0, 0, 1, 0, 0, 0,
         0, 1, 0, 0, 0, 0, 0, -1,
         0, 0, 2, 0, 0, 0, -1, 0,
         0, 0, 0, 1, 0, -1, 0, 0,
         1, 0, 0, 0, 2, 0, 0, 0,
         0, 0, 0, -1, 0, 4, 0, 0,
         0, 0, -1, 0, 0, 0, 2, 0,
         0, -1, 0, 0, 0, 0, 0, 4;
    return g;
}

/// Two-mode squeezed covariance on a (1, 1) system with cosh parameter c:
/// a valid state for c >= 1 whose partial transpose is indefinite for c > 1.
inline RealMatrix two_mode_squeezed(double c) {
    const double s = std::sqrt(c * c - 1.0);
    RealMatrix g(4, 4);
    g << c, 0, s, 0,
         0, c, 0, -s,
         s, 0, c, 0,
         0, -s, 0, c;
    return g;
}

/// Directory holding the JSON fixture documents, provided by the build.
inline std::string fixture_dir() {
#ifdef COVSEP_FIXTURE_DIR
    return COVSEP_FIXTURE_DIR;
#else
    return ".";
#endif
}

inline std::string fixture_path(const std::string& name) {
    return fixture_dir() + "/" + name;
}

}  // namespace covsep::testing
