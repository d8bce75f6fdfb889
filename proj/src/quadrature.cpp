#include "skewgap/quadrature.hpp"

#include "skewgap/error.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace skewgap {

namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the centre.
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Piece& other) const { return error < other.error; }
};

Piece gauss_kronrod(const std::function<double(double)>& f, double a, double b)
{
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = kKronrod[7] * fc;
    double gauss = kGauss[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double sum = f(centre - dx) + f(centre + dx);
        kronrod += kKronrod[i] * sum;
        if (i % 2 == 1) {
            gauss += kGauss[i / 2] * sum;
        }
    }
    kronrod *= half;
    gauss *= half;
    double error = std::abs(kronrod - gauss);
    if (!std::isfinite(kronrod)) {
        error = std::numeric_limits<double>::infinity();
    }
    return {a, b, kronrod, error};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           double a,
                           double b,
                           double abs_tol,
                           double rel_tol,
                           int max_intervals)
{
    if (a == b) {
        return {};
    }
    std::priority_queue<Piece> pieces;
    Piece first = gauss_kronrod(f, a, b);
    double value = first.value;
    double error = first.error;
    pieces.push(first);

    auto target = [&] { return std::max(abs_tol, rel_tol * std::abs(value)); };
    while (error > target() && static_cast<int>(pieces.size()) < max_intervals) {
        const Piece worst = pieces.top();
        pieces.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            pieces.push(worst);
            break;
        }
        const Piece left = gauss_kronrod(f, worst.a, mid);
        const Piece right = gauss_kronrod(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        pieces.push(left);
        pieces.push(right);
    }

    // Re-sum to drop accumulated cancellation from the running updates.
    QuadratureResult result;
    result.intervals = static_cast<int>(pieces.size());
    while (!pieces.empty()) {
        result.value += pieces.top().value;
        result.error += pieces.top().error;
        pieces.pop();
    }
    if (!(result.error <= target()) || !std::isfinite(result.value)) {
        std::ostringstream os;
        os << "adaptive quadrature on [" << a << ", " << b << "] did not converge: estimated error "
           << result.error << " exceeds tolerance " << target();
        throw ConvergenceError(os.str(), {result.error});
    }
    return result;
}

} // namespace skewgap
