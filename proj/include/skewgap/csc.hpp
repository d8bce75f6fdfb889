#pragma once

#include "skewgap/mesh.hpp"
#include "skewgap/profile.hpp"
#include "skewgap/surfaces.hpp"

#include <string>
#include <vector>

namespace skewgap {

/// Surfaces of revolution r(t, u) = (t cos u, t sin u, g(t)) whose potential
/// H^2 - K is identically 1 (|k1 - k2| = 2). With w(t) = 2 t (k - ln t) the slope is
///
///     h(t) = sign * w / sqrt(1 - w^2),
///
/// so that the parallel curvature is w / t = 2 (k - ln t) and the meridian
/// curvature is w'(t) = 2 (k - ln t) - 2; they differ by exactly 2.

/// Bifurcation value 1 - ln 2: below it there is one admissible t-interval, above it two.
double csc_bifurcation_value();

struct CscParams {
    double k = 0.5;
    /// +1 selects h >= 0 near the inner end of the outer branch, -1 the mirrored companion.
    int sign = +1;
};

enum class BranchKind { inner, outer, whole };

std::string to_string(BranchKind kind);

/// Maximal open t-interval on which the radicand is positive.
struct CscBranch {
    double t_lo = 0.0;
    double t_hi = 0.0;
    BranchKind kind = BranchKind::whole;
    /// k lies within the degeneracy tolerance of the bifurcation value.
    bool degenerate = false;
};

/// Radicand of the slope formula in expanded form,
/// 1 + (8k - 4 ln t) t^2 ln t - 4 k^2 t^2. Throws DomainError for t <= 0.
double csc_denominator(double t, double k);

/// Same quantity in factored form, 1 - 4 t^2 (ln t - k)^2.
double csc_discriminant(double t, double k);

/// Double root of the radicand located numerically: the k at which
/// min_t 2 t (ln t - k) = -1, together with the minimiser t.
struct DoubleRoot {
    double k = 0.0;
    double t = 0.0;
};
DoubleRoot csc_double_root();

/// Admissible t-intervals for the given k, found by bracketed bisection on
/// f(t) = 2 t (ln t - k) = +-1. One `whole` branch below the bifurcation value,
/// `inner` and `outer` branches above it. Branches are flagged degenerate when
/// |k - k0| <= degenerate_tol.
std::vector<CscBranch> csc_intervals(double k, double degenerate_tol = 5e-4);

/// Slope h(t) and its derivative. Throw DomainError outside the admissible set.
double csc_h(double t, const CscParams& params);
double csc_h_prime(double t, const CscParams& params);

/// Generator height g(t) = int h from the lower end, with arc length.
///
/// Each half of the branch is integrated in the regularised variable
/// t = t_end -+ u^2, which removes the inverse square-root singularity of h at the
/// interval endpoints. Samples are uniform in u on each half (the lower half gets
/// n_samples / 2 + n_samples % 2 of them). g(t_lo) = 0.
ProfileCurve csc_profile(const CscParams& params, const CscBranch& branch, int n_samples, double abs_tol = 1e-10);

/// Appends the reflected companion (g -> -g traversed backwards) and translates by
/// the period A = 2 (g(t_hi) - g(t_lo)); repeats `n_periods` times. The result
/// includes the closing sample. Joins whose tangent is not vertical are reported
/// as non-smooth (this happens at the axis end of inner branches).
ProfileCurve stack_profile(const ProfileCurve& profile, int n_periods);

/// |dt/ds| below which a join counts as a vertical tangent.
inline constexpr double kJoinTangencyTol = 1e-6;

/// One period of the stacked outer profile, with the analytic potential (== 1).
/// `n_s` distinct rings (even, >= 30). Throws DomainError unless k lies
/// above the bifurcation value by more than `degenerate_tol`.
RevolutionSurface csc_quotient_surface(const CscParams& params, int n_s, double degenerate_tol = 5e-4);

/// The quotient torus M / Z: one stacked period revolved with periodic closure.
TriangleMesh quotient_torus(const CscParams& params, int n_s, int n_theta, double degenerate_tol = 5e-4);

} // namespace skewgap
