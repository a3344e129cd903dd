#pragma once

#include <cstddef>
#include <vector>

#include "fragsim/errors.hpp"

namespace fragsim {

// Composite Simpson rule on a uniform grid with an odd number of points.
inline double simpson(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n < 3 || n % 2 == 0)
        throw ValidationError("simpson: need an odd number of points >= 3");
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i + 1 < n; i += 2) odd += f[i];
    for (std::size_t i = 2; i + 1 < n; i += 2) even += f[i];
    return (f.front() + f.back() + 4.0 * odd + 2.0 * even) * h / 3.0;
}

} // namespace fragsim
