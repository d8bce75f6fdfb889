#pragma once

#include <functional>

namespace skewgap {

struct QuadratureResult {
    double value = 0.0;
    /// Estimated absolute error (sum of |K15 - G7| over the final partition).
    double error = 0.0;
    int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [a, b].
///
/// The interval with the largest error estimate is bisected until the total
/// estimate drops below max(abs_tol, rel_tol * |value|). Nodes are interior, so
/// integrable endpoint singularities are never evaluated. Throws
/// ConvergenceError carrying the achieved estimate when `max_intervals` is hit.
QuadratureResult integrate(const std::function<double(double)>& f,
                           double a,
                           double b,
                           double abs_tol = 1e-10,
                           double rel_tol = 0.0,
                           int max_intervals = 4000);

} // namespace skewgap
