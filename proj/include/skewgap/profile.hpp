#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace skewgap {

/// One sample of a planar generator curve: radius t, height g and arc length s.
struct ProfileSample {
    double t = 0.0;
    double g = 0.0;
    double s = 0.0;
};

/// Tangency diagnostic at a point where two profile pieces are glued.
struct ProfileJoin {
    std::size_t index = 0;
    /// |dt/ds| at the join; zero means the tangent is vertical.
    double radial_slope = 0.0;
    bool smooth = false;
};

/// Sampled generator curve of a surface of revolution. Arc length is strictly
/// increasing along the samples.
struct ProfileCurve {
    std::vector<ProfileSample> samples;
    /// Vertical translation between consecutive periods, present once stacked.
    std::optional<double> period;
    std::vector<ProfileJoin> joins;
    /// |dt/ds| at the first and last sample when known analytically.
    std::optional<double> start_tangency;
    std::optional<double> end_tangency;

    std::size_t size() const noexcept { return samples.size(); }
    double arc_length() const { return samples.empty() ? 0.0 : samples.back().s - samples.front().s; }
    bool smooth_joins() const;
};

/// Slope g'(t) evaluated at t = t_end + delta, where t_end is the interval end
/// nearest to t. Passing the offset separately lets callers avoid cancellation
/// in factors that vanish at the end point.
using AnchoredSlope = std::function<double(double t_end, double delta)>;

/// Integrates g' and the arc length over [t_lo, t_hi] for slopes with inverse
/// square-root singularities at the ends. Each half of the interval uses the
/// substitution t = t_end +- u^2 and is sampled uniformly in u; the lower half
/// receives the extra sample when the count is uneven. g(t_lo) = s(t_lo) = 0.
/// `abs_tol` bounds the total quadrature error of g and s.
ProfileCurve integrate_slope(const AnchoredSlope& slope, double t_lo, double t_hi, int n_samples,
                             double abs_tol = 1e-10);

/// Throws DomainError unless the curve has at least two samples, finite values,
/// non-negative radii and strictly increasing arc length.
void validate_profile(const ProfileCurve& profile);

/// CSV with header `t,g,s`, one sample per line, classic locale.
void write_profile_csv(std::ostream& out, const ProfileCurve& profile);
void write_profile_csv(const std::string& path, const ProfileCurve& profile);
ProfileCurve read_profile_csv(std::istream& in, const std::string& source = "<stream>");
ProfileCurve read_profile_csv(const std::string& path);

} // namespace skewgap
