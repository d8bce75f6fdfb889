#include "skewgap/csc.hpp"

#include "skewgap/curvature.hpp"
#include "skewgap/error.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace skewgap {

namespace {

// f(t) = 2 t (ln t - k); the admissible set is |f| < 1.
double radial_function(double t, double k)
{
    return 2.0 * t * (std::log(t) - k);
}

// Bisection for a sign change of `g` on [lo, hi]; `g(lo)` and `g(hi)` must differ
// in sign. The endpoints themselves are never evaluated.
double bisect(const std::function<double(double)>& g, double lo, double hi, bool negative_at_lo)
{
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const bool negative = g(mid) < 0.0;
        if (negative == negative_at_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-16 * hi) {
            break;
        }
    }
    return 0.5 * (lo + hi);
}

double check_radius(double t)
{
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError("radius t must be positive and finite");
    }
    return t;
}

// Outermost t where f(t) = +1.
double outer_root(double k)
{
    const double lo = std::exp(k); // f(e^k) = 0
    double hi = 2.0 * lo;
    while (radial_function(hi, k) < 1.0) {
        hi *= 2.0;
    }
    return bisect([k](double t) { return radial_function(t, k) - 1.0; }, lo, hi, true);
}

} // namespace

double csc_bifurcation_value()
{
    return 1.0 - std::log(2.0);
}

std::string to_string(BranchKind kind)
{
    switch (kind) {
    case BranchKind::inner:
        return "inner";
    case BranchKind::outer:
        return "outer";
    case BranchKind::whole:
        return "whole";
    }
    return "unknown";
}

double csc_denominator(double t, double k)
{
    check_radius(t);
    const double lt = std::log(t);
    return 1.0 + (8.0 * k - 4.0 * lt) * t * t * lt - 4.0 * k * k * t * t;
}

double csc_discriminant(double t, double k)
{
    check_radius(t);
    const double d = std::log(t) - k;
    return 1.0 - 4.0 * t * t * d * d;
}

DoubleRoot csc_double_root()
{
    // Minimiser of f for fixed k: sign change of f'(t) = 2 (ln t - k + 1).
    auto argmin = [](double k) {
        return bisect([k](double t) { return std::log(t) - k + 1.0; }, 1e-12, 1e6, true);
    };
    // min_t f decreases monotonically in k; find where it reaches -1.
    const double k = bisect([&](double kk) { return -(radial_function(argmin(kk), kk) + 1.0); }, -2.0, 2.0, true);
    return {k, argmin(k)};
}

std::vector<CscBranch> csc_intervals(double k, double degenerate_tol)
{
    if (!std::isfinite(k)) {
        throw DomainError("k must be finite");
    }
    const bool degenerate = std::abs(k - csc_bifurcation_value()) <= degenerate_tol;
    const double t_min = std::exp(k - 1.0);
    const double f_min = radial_function(t_min, k);
    const double t_plus = outer_root(k);

    if (!(f_min < -1.0)) {
        return {{0.0, t_plus, BranchKind::whole, degenerate}};
    }
    const auto minus_one = [k](double t) { return radial_function(t, k) + 1.0; };
    const double t_inner = bisect(minus_one, 0.0, t_min, false);
    const double t_outer = bisect(minus_one, t_min, std::exp(k), true);
    return {{0.0, t_inner, BranchKind::inner, degenerate}, {t_outer, t_plus, BranchKind::outer, degenerate}};
}

double csc_h(double t, const CscParams& params)
{
    const double d = csc_denominator(t, params.k);
    if (!(d > 0.0)) {
        std::ostringstream os;
        os << "t = " << t << " lies outside the admissible intervals for k = " << params.k;
        throw DomainError(os.str());
    }
    return params.sign * 2.0 * (params.k - std::log(t)) * t / std::sqrt(d);
}

double csc_h_prime(double t, const CscParams& params)
{
    const double d = csc_denominator(t, params.k);
    if (!(d > 0.0)) {
        std::ostringstream os;
        os << "t = " << t << " lies outside the admissible intervals for k = " << params.k;
        throw DomainError(os.str());
    }
    const double w_prime = 2.0 * (params.k - std::log(t)) - 2.0;
    return params.sign * w_prime / (d * std::sqrt(d));
}

ProfileCurve csc_profile(const CscParams& params, const CscBranch& branch, int n_samples, double abs_tol)
{
    if (n_samples < 16) {
        throw DomainError("csc_profile needs at least 16 samples");
    }
    if (!(branch.t_hi > branch.t_lo) || branch.t_lo < 0.0) {
        throw DomainError("invalid branch interval");
    }
    if (params.sign != 1 && params.sign != -1) {
        throw DomainError("branch sign must be +1 or -1");
    }
    const double k = params.k;
    const double t_lo = branch.t_lo;
    const double t_hi = branch.t_hi;

    auto w_of = [k](double t) { return 2.0 * t * (k - std::log(t)); };

    // The radicand is D = (1 - f)(1 + f) with f = -w. Near an end point root t_e,
    // where f(t_e) = +-1, the vanishing factor is evaluated as f(t) - f(t_e)
    // written in terms of delta = t - t_e, which avoids cancellation.
    auto radicand = [&](double t, double t_end, double delta) {
        const double f = -w_of(t);
        if (t_end <= 0.0) {
            return (1.0 - f) * (1.0 + f);
        }
        const double df = 2.0 * (delta * (std::log(t) - k) + t_end * std::log1p(delta / t_end));
        const bool plus_one = -w_of(t_end) > 0.0;
        return plus_one ? -df * (1.0 + f) : df * (1.0 - f);
    };
    auto slope = [&](double t_end, double delta) {
        const double t = t_end + delta;
        const double d = radicand(t, t_end, delta);
        if (!(d > 0.0)) {
            throw DomainError("slope evaluated outside the admissible interval");
        }
        return w_of(t) / std::sqrt(d);
    };

    ProfileCurve profile = integrate_slope(slope, t_lo, t_hi, n_samples, abs_tol);
    if (params.sign < 0) {
        for (auto& p : profile.samples) {
            p.g = -p.g;
        }
    }

    // |dt/ds| = sqrt(D); D(0+) = 1 and D = 0 at the finite roots.
    auto tangency = [&](double t) {
        if (t <= 0.0) {
            return 1.0;
        }
        return std::sqrt(std::max(0.0, csc_discriminant(t, k)));
    };
    profile.start_tangency = tangency(t_lo);
    profile.end_tangency = tangency(t_hi);
    return profile;
}

ProfileCurve stack_profile(const ProfileCurve& profile, int n_periods)
{
    validate_profile(profile);
    if (n_periods < 1) {
        throw DomainError("stack_profile needs n_periods >= 1");
    }
    const auto& base = profile.samples;
    const std::size_t m = base.size() - 1;
    const double g0 = base.front().g;
    const double s0 = base.front().s;
    const double rise = base.back().g - g0;
    const double arc = base.back().s - s0;
    const double period = 2.0 * rise;

    // Tangency at the two ends; fall back to a one-sided difference.
    auto estimate = [&](std::size_t i, std::size_t j) {
        return std::abs((base[j].t - base[i].t) / (base[j].s - base[i].s));
    };
    const double start = profile.start_tangency.value_or(estimate(0, 1));
    const double end = profile.end_tangency.value_or(estimate(m - 1, m));

    ProfileCurve out;
    out.period = period;
    out.start_tangency = start;
    out.end_tangency = start;
    out.samples.push_back({base[0].t, g0, s0});
    for (int p = 0; p < n_periods; ++p) {
        const double z = g0 + p * period;
        const double s = s0 + 2.0 * p * arc;
        for (std::size_t i = 1; i <= m; ++i) {
            out.samples.push_back({base[i].t, z + (base[i].g - g0), s + (base[i].s - s0)});
        }
        out.joins.push_back({out.samples.size() - 1, end, end < kJoinTangencyTol});
        for (std::size_t i = m; i-- > 0;) {
            out.samples.push_back({base[i].t, z + 2.0 * rise - (base[i].g - g0), s + arc + (base.back().s - base[i].s)});
        }
        out.joins.push_back({out.samples.size() - 1, start, start < kJoinTangencyTol});
    }
    return out;
}

RevolutionSurface csc_quotient_surface(const CscParams& params, int n_s, double degenerate_tol)
{
    const double k0 = csc_bifurcation_value();
    if (!(params.k > k0 + degenerate_tol)) {
        std::ostringstream os;
        os << "quotient torus needs k > k0 = " << k0 << " (outside the degeneracy tolerance " << degenerate_tol
           << "); k = " << params.k << " gives no smooth outer branch";
        throw DomainError(os.str());
    }
    if (n_s < 30 || n_s % 2 != 0) {
        throw DomainError("quotient torus needs an even number of rings n_s >= 30");
    }
    CscBranch outer;
    for (const auto& b : csc_intervals(params.k, degenerate_tol)) {
        if (b.kind == BranchKind::outer) {
            outer = b;
        }
    }
    const ProfileCurve base = csc_profile(params, outer, n_s / 2 + 1);

    RevolutionSurface surface;
    surface.closure = Closure::periodic;
    surface.profile = stack_profile(base, 1);
    const double k = params.k;
    for (const auto& p : surface.profile.samples) {
        // Principal curvatures in the form that stays finite at vertical tangents.
        const double w = 2.0 * p.t * (k - std::log(p.t));
        const double kappa_parallel = w / p.t;
        const double kappa_meridian = 2.0 * (k - std::log(p.t)) - 2.0;
        const double skew = kappa_meridian - kappa_parallel;
        surface.potential.push_back(0.25 * skew * skew);
    }
    return surface;
}

TriangleMesh quotient_torus(const CscParams& params, int n_s, int n_theta, double degenerate_tol)
{
    return revolve(csc_quotient_surface(params, n_s, degenerate_tol).profile, n_theta, Closure::periodic);
}

} // namespace skewgap
