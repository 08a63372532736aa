// rk4.hpp -- classical fourth-order Runge-Kutta step over flat state vectors

#pragma once

#include <vector>

namespace cjt {

// rhs: (const std::vector<double>&) -> std::vector<double>
template <typename Rhs>
std::vector<double> rk4_step(Rhs&& rhs, const std::vector<double>& y, double dt) {
    const std::size_t n = y.size();
    const std::vector<double> k1 = rhs(y);
    std::vector<double> tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    const std::vector<double> k2 = rhs(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    const std::vector<double> k3 = rhs(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
    const std::vector<double> k4 = rhs(tmp);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

} // namespace cjt
