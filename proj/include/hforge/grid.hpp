/*
   Copyright 2026 The hermite-forge Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef HFORGE_GRID_HPP
#define HFORGE_GRID_HPP

#include <string>
#include <vector>

#include "error.hpp"

namespace hforge {

/** Vector samples f(alpha) in R^{d+1} for alpha in [lo, hi], attached to the
 *  dyadic level n (points 2^{-n} alpha). */
template <class T>
struct Grid {
    int level = 0;
    long lo = 0;
    std::vector<std::vector<T>> values;

    long hi() const { return lo + static_cast<long>(values.size()) - 1; }
    bool contains(long alpha) const { return alpha >= lo && alpha <= hi(); }
    std::size_t width() const { return values.size(); }
    int dim() const { return values.empty() ? 0 : static_cast<int>(values.front().size()); }

    const std::vector<T>& at(long alpha) const {
        if (!contains(alpha)) fail(errc::window_too_small, "sample " + std::to_string(alpha) + " outside window");
        return values[static_cast<std::size_t>(alpha - lo)];
    }
    std::vector<T>& at(long alpha) {
        if (!contains(alpha)) fail(errc::window_too_small, "sample " + std::to_string(alpha) + " outside window");
        return values[static_cast<std::size_t>(alpha - lo)];
    }

    static Grid zeros(int level, long lo, long hi, int dim) {
        Grid g;
        g.level = level;
        g.lo = lo;
        g.values.assign(static_cast<std::size_t>(hi - lo + 1), std::vector<T>(static_cast<std::size_t>(dim), T(0)));
        return g;
    }

    friend bool operator==(const Grid& a, const Grid& b) { return a.level == b.level && a.lo == b.lo && a.values == b.values; }
};

} // namespace hforge

#endif // HFORGE_GRID_HPP
