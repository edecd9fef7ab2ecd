#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace lgkac::detail {

/// One periodic upwind step of du/dt + a du/dx = 0 with Courant number
/// courant = a dt / dx, |courant| <= 1. At |courant| == 1 this is an exact
/// one-cell shift and is performed as a rotation.
template <class T>
void advect_periodic(std::vector<T>& u, double courant, std::vector<T>& scratch) {
    const std::size_t n = u.size();
    if (n == 0 || courant == 0.0) return;
    if (std::abs(std::abs(courant) - 1.0) <= 1e-12) {
        if (courant > 0.0)
            std::rotate(u.rbegin(), u.rbegin() + 1, u.rend());
        else
            std::rotate(u.begin(), u.begin() + 1, u.end());
        return;
    }
    scratch.assign(u.begin(), u.end());
    const double c = std::abs(courant);
    if (courant > 0.0) {
        for (std::size_t j = 0; j < n; ++j) {
            const T& upstream = scratch[j == 0 ? n - 1 : j - 1];
            u[j] = scratch[j] * (1.0 - c) + upstream * c;
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            const T& upstream = scratch[j + 1 == n ? 0 : j + 1];
            u[j] = scratch[j] * (1.0 - c) + upstream * c;
        }
    }
}

} // namespace lgkac::detail
