#include "skewgap/bounds.hpp"

#include "skewgap/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace skewgap {

namespace {

void check_area(const GeometricSummary& geom)
{
    if (!(geom.area > 0.0)) {
        throw DomainError("bounds need a surface of positive area");
    }
}

void check_constant_skew(const GeometricSummary& geom, int genus)
{
    if (genus < 0) {
        throw DomainError("genus must be non-negative");
    }
    if (!is_constant_skew(geom)) {
        std::ostringstream os;
        os << "surface does not have constant skew curvature (max V - mean V = " << geom.potential_spread()
           << "); the bound is not claimed here";
        throw DomainError(os.str());
    }
}

Verdict gap_verdict(const std::string& name, double rhs, double gap, double tol)
{
    Verdict v;
    v.bound = name;
    v.rhs = rhs;
    v.observed = gap;
    v.pass = gap <= rhs * (1.0 + tol);
    v.margin = rhs != 0.0 ? (rhs - gap) / std::abs(rhs) : (gap <= 0.0 ? 0.0 : -1.0);
    return v;
}

} // namespace

double gap_bound_result1(const GeometricSummary& geom, const PhysicalUnits& units)
{
    check_area(geom);
    return units.energy_factor() * (2.0 * geom.willmore / geom.area + geom.potential_spread());
}

bool is_constant_skew(const GeometricSummary& geom, double rel_tol)
{
    check_area(geom);
    const double scale = std::max(geom.mean_potential(), geom.willmore / geom.area);
    return geom.potential_spread() <= rel_tol * scale;
}

double gap_bound_nona(const GeometricSummary& geom, int genus, const PhysicalUnits& units)
{
    check_constant_skew(geom, genus);
    const double topological = 4.0 * M_PI * (1.0 + genus);
    return 2.0 * units.energy_factor() / geom.area * std::min(topological, geom.willmore);
}

double gap_bound_oka_printed(const GeometricSummary& geom, int genus, const PhysicalUnits& units)
{
    check_constant_skew(geom, genus);
    const double c_sq = 4.0 * geom.mean_potential();
    return 2.0 * units.energy_factor() * (c_sq + 4.0 * M_PI * (1.0 - genus) / geom.area);
}

double gap_bound_oka_reconstructed(const GeometricSummary& geom, int genus, const PhysicalUnits& units)
{
    check_constant_skew(geom, genus);
    return 2.0 * units.energy_factor() * (geom.mean_potential() + 4.0 * M_PI * (1.0 - genus) / geom.area);
}

double gap_bound_result2(const GeometricSummary& geom, int k, std::optional<double> c_g, const PhysicalUnits& units)
{
    check_area(geom);
    if (!c_g) {
        throw DomainError("the constant c(g) is required for this bound and has no default");
    }
    if (!(*c_g > 0.0) || !std::isfinite(*c_g)) {
        throw DomainError("c(g) must be a positive finite number");
    }
    if (k < 2) {
        throw DomainError("gap index k must be at least 2");
    }
    return units.energy_factor() * (k / (geom.area * *c_g) + geom.potential_spread());
}

double lambda0_lower_bound(const GeometricSummary& geom, const PhysicalUnits& units)
{
    return -units.energy_factor() * geom.max_potential();
}

WeylReport weyl_check(const SpectralResult& result, const GeometricSummary& geom, double c_g,
                      const PhysicalUnits& units)
{
    check_area(geom);
    if (result.size() < 30) {
        throw DomainError("the Weyl check needs at least 30 eigenvalues");
    }
    if (!(c_g > 0.0)) {
        throw DomainError("c(g) must be positive");
    }
    const std::vector<double> e = result.energies(units);
    WeylReport report;
    report.c_g = c_g;
    report.reference = units.energy_factor() / (c_g * geom.area);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < e.size(); ++k) {
        const double ratio = (e[k] - e[0]) / static_cast<double>(k);
        best = std::min(best, ratio);
        report.ratios.push_back(ratio);
        report.running_min.push_back(best);
    }
    return report;
}

bool BoundReport::all_pass() const
{
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

std::vector<Verdict> certify(const BoundReport& report, const SpectralResult& spectrum, const PhysicalUnits& units,
                             double tol, double lambda0_slack)
{
    if (spectrum.size() < 2) {
        throw DomainError("certification needs at least two eigenvalues");
    }
    const std::vector<double> e = spectrum.energies(units);
    const double gap = e[1] - e[0];
    std::vector<Verdict> verdicts;
    verdicts.push_back(gap_verdict("result1", report.result1, gap, tol));
    if (report.nona) {
        verdicts.push_back(gap_verdict("nona", *report.nona, gap, tol));
    }
    if (report.oka_reconstructed) {
        verdicts.push_back(gap_verdict("oka_reconstructed", *report.oka_reconstructed, gap, tol));
    }

    Verdict ground;
    ground.bound = "lambda0_lower";
    ground.rhs = report.lambda0_lower;
    ground.observed = e[0];
    const double slack = units.energy_factor() * lambda0_slack * std::max(1.0, std::abs(report.lambda0_lower));
    ground.pass = e[0] >= report.lambda0_lower - slack;
    ground.margin = (e[0] - report.lambda0_lower) / std::max(std::abs(report.lambda0_lower), units.energy_factor());
    verdicts.push_back(ground);
    return verdicts;
}

BoundReport make_bound_report(const std::string& surface, const GeometricSummary& geom,
                              const SpectralResult& spectrum, const PhysicalUnits& units,
                              const BoundOptions& options)
{
    BoundReport report;
    report.surface = surface;
    report.units = units;
    report.result1 = gap_bound_result1(geom, units);
    report.lambda0_lower = lambda0_lower_bound(geom, units);

    if (!geom.genus) {
        report.constant_skew_note = "genus undefined (non-orientable or open surface)";
    } else if (!is_constant_skew(geom)) {
        std::ostringstream os;
        os << "not constant skew: max V - mean V = " << geom.potential_spread();
        report.constant_skew_note = os.str();
    } else {
        const int g = *geom.genus;
        report.nona = gap_bound_nona(geom, g, units);
        report.oka_printed = gap_bound_oka_printed(geom, g, units);
        report.oka_reconstructed = gap_bound_oka_reconstructed(geom, g, units);
    }
    if (options.c_g) {
        report.result2 = gap_bound_result2(geom, options.result2_k, options.c_g, units);
        report.result2_k = options.result2_k;
        report.result2_c_g = *options.c_g;
        if (spectrum.size() >= 30) {
            report.weyl = weyl_check(spectrum, geom, *options.c_g, units);
        }
    }

    const std::vector<double> e = spectrum.energies(units);
    if (!e.empty()) {
        report.ground_energy = e[0];
    }
    for (std::size_t k = 1; k < e.size(); ++k) {
        report.gaps.push_back(e[k] - e[0]);
    }
    report.verdicts = certify(report, spectrum, units, options.tol, options.lambda0_slack);
    return report;
}

} // namespace skewgap
