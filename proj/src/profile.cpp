#include "skewgap/profile.hpp"

#include "skewgap/error.hpp"
#include "skewgap/quadrature.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <locale>
#include <sstream>

namespace skewgap {

bool ProfileCurve::smooth_joins() const
{
    for (const auto& j : joins) {
        if (!j.smooth) {
            return false;
        }
    }
    return true;
}

void validate_profile(const ProfileCurve& profile)
{
    const auto& s = profile.samples;
    if (s.size() < 2) {
        throw DomainError("profile needs at least two samples");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s[i].t) || !std::isfinite(s[i].g) || !std::isfinite(s[i].s)) {
            throw DomainError("profile sample " + std::to_string(i) + " is not finite");
        }
        if (s[i].t < 0.0) {
            throw DomainError("profile sample " + std::to_string(i) + " has negative radius");
        }
        if (i > 0 && !(s[i].s > s[i - 1].s)) {
            throw DomainError("profile arc length is not strictly increasing at sample " + std::to_string(i));
        }
    }
}

void write_profile_csv(std::ostream& out, const ProfileCurve& profile)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    os << "t,g,s\n";
    for (const auto& p : profile.samples) {
        os << p.t << ',' << p.g << ',' << p.s << '\n';
    }
    out << os.str();
}

void write_profile_csv(const std::string& path, const ProfileCurve& profile)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    write_profile_csv(out, profile);
    if (!out) {
        throw Error("failed writing '" + path + "'");
    }
}

ProfileCurve read_profile_csv(std::istream& in, const std::string& source)
{
    ProfileCurve profile;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (!header) {
            if (line != "t,g,s") {
                throw ParseError(source + ":" + std::to_string(line_no) + ": expected header 't,g,s'");
            }
            header = true;
            continue;
        }
        std::istringstream is(line);
        is.imbue(std::locale::classic());
        ProfileSample p;
        char c1 = 0, c2 = 0;
        if (!(is >> p.t >> c1 >> p.g >> c2 >> p.s) || c1 != ',' || c2 != ',') {
            throw ParseError(source + ":" + std::to_string(line_no) + ": expected 't,g,s' numeric record");
        }
        is >> std::ws;
        if (!is.eof()) {
            throw ParseError(source + ":" + std::to_string(line_no) + ": trailing characters");
        }
        profile.samples.push_back(p);
    }
    if (!header) {
        throw ParseError(source + ": empty profile file");
    }
    return profile;
}

ProfileCurve read_profile_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    return read_profile_csv(in, path);
}

ProfileCurve integrate_slope(const AnchoredSlope& slope, double t_lo, double t_hi, int n_samples, double abs_tol)
{
    if (n_samples < 3) {
        throw DomainError("integrate_slope needs at least 3 samples");
    }
    if (!(t_hi > t_lo) || !std::isfinite(t_lo) || !std::isfinite(t_hi)) {
        throw DomainError("integrate_slope needs a finite interval with t_lo < t_hi");
    }
    const double t_mid = 0.5 * (t_lo + t_hi);
    const int intervals = n_samples - 1;
    const int lower = (intervals + 1) / 2;
    const int upper = intervals - lower;
    const double u_lo = std::sqrt(t_mid - t_lo);
    const double u_hi = std::sqrt(t_hi - t_mid);
    const double piece_tol = 0.5 * abs_tol / intervals;

    // dt = 2 u du on both halves.
    auto rise = [&](double t_end, double u, double delta) { return 2.0 * u * slope(t_end, delta); };
    auto arc = [&](double t_end, double u, double delta) {
        return 2.0 * u * std::hypot(1.0, slope(t_end, delta));
    };

    ProfileCurve profile;
    profile.samples.reserve(static_cast<std::size_t>(n_samples));
    profile.samples.push_back({t_lo, 0.0, 0.0});
    double g = 0.0;
    double s = 0.0;
    for (int i = 0; i < lower; ++i) {
        const double a = u_lo * i / lower;
        const double b = u_lo * (i + 1) / lower;
        g += integrate([&](double u) { return rise(t_lo, u, u * u); }, a, b, piece_tol).value;
        s += integrate([&](double u) { return arc(t_lo, u, u * u); }, a, b, piece_tol).value;
        profile.samples.push_back({i + 1 == lower ? t_mid : t_lo + b * b, g, s});
    }
    for (int j = 0; j < upper; ++j) {
        // v runs from u_hi down to 0 while t runs up to t_hi.
        const double a = u_hi * (upper - j - 1) / upper;
        const double b = u_hi * (upper - j) / upper;
        g += integrate([&](double v) { return rise(t_hi, v, -v * v); }, a, b, piece_tol).value;
        s += integrate([&](double v) { return arc(t_hi, v, -v * v); }, a, b, piece_tol).value;
        profile.samples.push_back({j + 1 == upper ? t_hi : t_hi - a * a, g, s});
    }
    return profile;
}

} // namespace skewgap
