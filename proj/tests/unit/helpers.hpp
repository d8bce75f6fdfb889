#pragma once

#include "skewgap/mesh.hpp"

#include <cmath>
#include <functional>

namespace testutil {

// Composite Simpson rule with n (even) panels; used as an independent oracle.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000)
{
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    }
    return sum * h / 3.0;
}

inline double simpson2d(const std::function<double(double, double)>& f, double a0, double a1, double b0, double b1,
                        int n = 400)
{
    return simpson([&](double x) { return simpson([&](double y) { return f(x, y); }, b0, b1, n); }, a0, a1, n);
}

inline double rel_err(double value, double reference)
{
    return std::abs(value - reference) / std::abs(reference);
}

} // namespace testutil
