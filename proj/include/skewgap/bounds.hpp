#pragma once

#include "skewgap/curvature.hpp"
#include "skewgap/spectral.hpp"
#include "skewgap/units.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skewgap {

/// Upper bound on E1 - E0 from the Willmore ratio and the spread of H^2 - K:
/// (hbar^2 / 2m) (2 W / A + max V - mean V).
double gap_bound_result1(const GeometricSummary& geom, const PhysicalUnits& units);

/// Relative spread below which a surface counts as having constant skew
/// curvature: max V - mean V <= kConstantSkewTol * max(mean V, W / A).
inline constexpr double kConstantSkewTol = 0.05;

bool is_constant_skew(const GeometricSummary& geom, double rel_tol = kConstantSkewTol);

/// (hbar^2 / (m A)) min{4 pi (1 + g), W}. Only valid for constant skew
/// curvature; throws DomainError otherwise or for negative genus.
double gap_bound_nona(const GeometricSummary& geom, int genus, const PhysicalUnits& units);

/// Willmore-ratio bound for constant skew curvature S = c, in the printed
/// reading (hbar^2 / m)(c^2 + 4 pi (1 - g) / A) with c^2 = 4 mean V.
double gap_bound_oka_printed(const GeometricSummary& geom, int genus, const PhysicalUnits& units);

/// Same bound with c^2 / 4 = mean V, i.e. (hbar^2 / m)(mean V + 4 pi (1 - g) / A).
/// By Gauss-Bonnet this is (hbar^2 / m) W / A.
double gap_bound_oka_reconstructed(const GeometricSummary& geom, int genus, const PhysicalUnits& units);

/// (hbar^2 / 2m)(k / (A c_g) + max V - mean V) for the k-th gap. The constant
/// c_g is not known in closed form; callers must supply one. Report-only.
double gap_bound_result2(const GeometricSummary& geom, int k, std::optional<double> c_g, const PhysicalUnits& units);

/// Rayleigh lower bound on the ground energy, -(hbar^2 / 2m) max V.
double lambda0_lower_bound(const GeometricSummary& geom, const PhysicalUnits& units);

struct WeylReport {
    /// (E_k - E_0) / k for k = 1..n-1.
    std::vector<double> ratios;
    std::vector<double> running_min;
    /// (hbar^2 / 2m) / (c_g A).
    double reference = 0.0;
    double c_g = 0.0;
};

/// Needs at least 30 eigenvalues. Report-only.
WeylReport weyl_check(const SpectralResult& result, const GeometricSummary& geom, double c_g,
                      const PhysicalUnits& units);

struct Verdict {
    std::string bound;
    bool pass = false;
    /// (rhs - observed) / |rhs|; negative when the bound is violated.
    double margin = 0.0;
    double rhs = 0.0;
    double observed = 0.0;
};

struct BoundReport {
    std::string surface;
    PhysicalUnits units;
    double result1 = 0.0;
    std::optional<double> nona;
    std::optional<double> oka_printed;
    std::optional<double> oka_reconstructed;
    /// Why nona / oka were not evaluated, when they were not.
    std::string constant_skew_note;
    std::optional<double> result2;
    int result2_k = 0;
    double result2_c_g = 0.0;
    double lambda0_lower = 0.0;
    /// E_k - E_0 for k = 1..n-1.
    std::vector<double> gaps;
    double ground_energy = 0.0;
    std::vector<Verdict> verdicts;
    std::optional<WeylReport> weyl;

    bool all_pass() const;
};

struct BoundOptions {
    /// Relative certification tolerance on the gap bounds.
    double tol = 0.02;
    /// Absolute slack, in units of lambda, for the ground-state bound.
    double lambda0_slack = 1e-8;
    std::optional<double> c_g;
    int result2_k = 2;
};

/// Evaluates every bound from the summary and certifies the certified ones
/// against the spectrum.
BoundReport make_bound_report(const std::string& surface, const GeometricSummary& geom,
                              const SpectralResult& spectrum, const PhysicalUnits& units,
                              const BoundOptions& options = {});

/// Compares E1 - E0 against each certified gap bound (pass iff gap <= rhs (1 + tol))
/// and E0 against the Rayleigh bound. Report-only bounds are skipped.
std::vector<Verdict> certify(const BoundReport& report, const SpectralResult& spectrum, const PhysicalUnits& units,
                             double tol = 0.02, double lambda0_slack = 1e-8);

} // namespace skewgap
