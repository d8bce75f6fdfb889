// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

#include "skewgap/bounds.hpp"
#include "skewgap/csc.hpp"
#include "skewgap/curvature.hpp"
#include "skewgap/fleet.hpp"
#include "skewgap/quadrature.hpp"
#include "skewgap/report.hpp"
#include "skewgap/spectral.hpp"
#include "skewgap/surfaces.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace skewgap;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double rel(double value, double reference)
{
    return std::abs(value - reference) / std::abs(reference);
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what)
    {
        if (!condition) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

// ---------------------------------------------------------------------------

Outcome sphere_exact_gap()
{
    Outcome out;
    const auto start = Clock::now();
    const TriangleMesh mesh = icosphere(6);
    const CurvatureField field = discrete_curvatures(mesh);
    const GeometricSummary geom = geometric_summary(mesh, field);
    const SpectralResult spectrum = lowest_eigenpairs(assemble_fem(mesh, field), 5);
    const PhysicalUnits units;
    const auto e = spectrum.energies(units);
    const double gap = e[1] - e[0];
    const double r1 = gap_bound_result1(geom, units);
    const double elapsed = seconds_since(start);
    out.detail << "V=" << mesh.num_vertices() << " gap=" << gap << " result1=" << r1 << " t=" << elapsed << "s";
    out.require(mesh.num_vertices() >= 40000, "vertex count");
    out.require(rel(gap, 1.0) < 0.01, "gap within 1%");
    out.require(rel(r1, 1.0) < 0.005, "result1 within 0.5%");
    out.require(elapsed < 60.0, "runtime");
    return out;
}

Outcome gauss_bonnet()
{
    Outcome out;
    std::vector<std::pair<std::string, TriangleMesh>> meshes;
    for (int level = 0; level <= 6; ++level) {
        meshes.emplace_back("icosphere" + std::to_string(level), icosphere(level));
    }
    meshes.emplace_back("ellipsoid", ellipsoid(1.0, 1.2, 0.8, 5));
    meshes.emplace_back("torus", torus(2.0, 1.0, 96, 48));
    meshes.emplace_back("thin torus", torus(3.0, 0.4, 120, 24));
    meshes.emplace_back("genus two", genus_two());
    meshes.emplace_back("scaled", scale_mesh(torus(2.0, 1.0, 40, 20), 3.7));
    for (double k : {0.33, 0.5, 0.7}) {
        meshes.emplace_back("quotient torus", quotient_torus({k, 1}, 96, 192));
    }
    double worst = 0.0;
    for (const auto& [name, mesh] : meshes) {
        const double residual = gauss_bonnet_residual(mesh);
        const double allowed = 1e-9 * static_cast<double>(mesh.num_vertices());
        worst = std::max(worst, residual / allowed);
        out.require(residual < allowed, name);
    }
    out.detail << meshes.size() << " meshes, worst residual/(1e-9 V)=" << worst;
    return out;
}

// Independent oracle for a round torus: W = 2 pi int_0^{2 pi} (R + 2 r cos v)^2 / (4 r (R + r cos v)) dv.
double torus_willmore_oracle(double major, double minor)
{
    const auto integrand = [&](double v) {
        const double c = std::cos(v);
        return std::pow(major + 2.0 * minor * c, 2) / (4.0 * minor * (major + minor * c));
    };
    return 2.0 * M_PI * integrate(integrand, 0.0, 2.0 * M_PI, 1e-13).value;
}

Outcome willmore()
{
    Outcome out;
    double previous = INFINITY;
    bool monotone = true;
    double sphere_error = 0.0;
    for (int level = 2; level <= 6; ++level) {
        sphere_error = rel(geometric_summary(icosphere(level)).willmore, 4.0 * M_PI);
        monotone = monotone && sphere_error <= previous;
        previous = sphere_error;
    }
    const double oracle = torus_willmore_oracle(std::sqrt(2.0), 1.0);
    const TriangleMesh clifford = torus(std::sqrt(2.0), 1.0, 256, 128);
    const double w = geometric_summary(clifford).willmore;
    double scale_error = 0.0;
    for (double s : {0.5, 2.0, 7.0}) {
        scale_error = std::max(scale_error, rel(geometric_summary(scale_mesh(clifford, s)).willmore, w));
    }
    out.detail << "sphere err=" << sphere_error << " torus W=" << w << " oracle=" << oracle
               << " (2pi^2=" << 2.0 * M_PI * M_PI << ") scale err=" << scale_error;
    out.require(monotone, "sphere refinement monotone");
    out.require(sphere_error < 0.005, "sphere W within 0.5% of 4 pi");
    out.require(rel(oracle, 2.0 * M_PI * M_PI) < 1e-12, "oracle self-check");
    out.require(rel(w, oracle) < 0.01, "torus W within 1%");
    out.require(scale_error < 1e-10, "scale invariance");
    return out;
}

Outcome csc_family()
{
    Outcome out;
    const DoubleRoot root = csc_double_root();
    const double k0 = 1.0 - std::log(2.0);
    out.require(std::abs(root.k - k0) < 1e-10, "k0");
    out.require(std::abs(root.t - 0.5) < 1e-10, "double root at t = 1/2");

    for (double k : {0.1, 0.25}) {
        out.require(csc_intervals(k).size() == 1, "one branch below k0");
    }
    for (double k : {0.33, 0.5, 0.7}) {
        out.require(csc_intervals(k).size() == 2, "two branches above k0");
    }

    double worst_potential = 0.0;
    std::size_t checked = 0;
    for (double k : {0.1, 0.25, 0.33, 0.5, 0.7}) {
        for (const auto& branch : csc_intervals(k)) {
            for (int sign : {1, -1}) {
                const CscParams p{k, sign};
                const ProfileCurve profile = csc_profile(p, branch, 201);
                for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
                    const double t = profile.samples[i].t;
                    const SorCurvatures c = analytic_sor_curvatures(t, csc_h(t, p), csc_h_prime(t, p));
                    worst_potential = std::max(worst_potential, std::abs(c.potential() - 1.0));
                    ++checked;
                }
            }
        }
        if (k > k0) {
            for (double v : csc_quotient_surface({k, 1}, 400).potential) {
                worst_potential = std::max(worst_potential, std::abs(v - 1.0));
                ++checked;
            }
        }
    }
    out.require(worst_potential < 1e-8, "H^2 - K = 1 along profiles");

    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> t_dist(1e-3, 4.0);
    std::uniform_real_distribution<double> k_dist(-1.0, 1.5);
    double worst_radicand = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double t = t_dist(rng);
        const double k = k_dist(rng);
        const double factored = 1.0 - 4.0 * t * t * std::pow(std::log(t) - k, 2);
        worst_radicand = std::max(worst_radicand,
                                  std::abs(csc_denominator(t, k) - factored) / std::max(1.0, std::abs(factored)));
    }
    out.require(worst_radicand < 1e-12, "radicand identity");
    out.detail << "k0 err=" << std::abs(root.k - k0) << " t err=" << std::abs(root.t - 0.5)
               << " max|V-1|=" << worst_potential << " over " << checked << " points, radicand err=" << worst_radicand;
    return out;
}

Outcome quotient_torus_bound()
{
    Outcome out;
    const PhysicalUnits units;
    const double bound = 2.0 * units.energy_factor(); // hbar^2 / m
    for (double k : {0.33, 0.5, 0.7}) {
        const auto start = Clock::now();
        std::vector<double> errors;
        for (int n : {32, 64, 128}) {
            const GeometricSummary g = geometric_summary(quotient_torus({k, 1}, n, 2 * n));
            errors.push_back(std::abs(g.willmore / g.area - 1.0));
        }
        bool refining = true;
        for (std::size_t i = 1; i < errors.size(); ++i) {
            refining = refining && errors[i] < errors[i - 1];
        }

        SurfaceSpec spec;
        spec.kind = SurfaceKind::csc_torus;
        spec.k = k;
        const Analysis fem = analyze(spec, Method::fem, 6);
        const auto e = fem.spectrum.energies(units);
        const double gap = e[1] - e[0];
        const double margin = (bound - gap) / bound;
        const double elapsed = seconds_since(start);
        out.detail << "k=" << k << ": W/A err=" << errors.back() << " gap=" << gap << " margin=" << margin
                   << " parity(E1)=" << fem.spectrum.labels[1].parity << " t=" << elapsed << "s; ";
        out.require(refining, "W/A converges under refinement");
        out.require(errors.back() < 0.01, "W/A within 1%");
        out.require(margin > 0.0, "positive margin");
        out.require(elapsed < 120.0, "runtime");
    }
    return out;
}

Outcome backend_agreement()
{
    Outcome out;
    SurfaceSpec sphere;
    SurfaceSpec round_torus;
    round_torus.kind = SurfaceKind::torus;
    for (const auto& [name, spec] : {std::pair{"sphere", sphere}, std::pair{"torus", round_torus}}) {
        const SpectralResult sor = analyze(spec, Method::sor, 10).spectrum;
        const SpectralResult fem = analyze(spec, Method::fem, 10).spectrum;
        // Relative error; eigenvalues near zero are measured against the ground
        // state or the first gap, whichever is larger.
        const double floor = std::max(std::abs(sor.eigenvalues[0]), sor.eigenvalues[1] - sor.eigenvalues[0]);
        double worst = 0.0;
        for (std::size_t i = 0; i < 10; ++i) {
            const double scale = std::max(std::abs(sor.eigenvalues[i]), floor);
            worst = std::max(worst, std::abs(sor.eigenvalues[i] - fem.eigenvalues[i]) / scale);
        }
        out.detail << name << " worst=" << worst << "; ";
        out.require(worst < 0.01, std::string(name) + " within 1%");
    }
    return out;
}

Outcome ground_state_bound()
{
    Outcome out;
    const PhysicalUnits units;
    double worst_similarity = 1.0;
    for (const auto& entry : fleet("all")) {
        const Analysis a = analyze(entry.spec, entry.method, 12);
        const BoundReport report = make_bound_report(entry.name, a.geom, a.spectrum, units);
        const Verdict& ground = report.verdicts.back();
        out.require(ground.bound == "lambda0_lower" && ground.pass, entry.name + " lambda0 bound");

        const bool constant_potential =
            entry.spec.kind == SurfaceKind::sphere || entry.spec.kind == SurfaceKind::csc_torus;
        if (constant_potential) {
            const double v = entry.spec.kind == SurfaceKind::sphere ? 0.0 : 1.0;
            const double similarity = a.spectrum.constant_similarity(0);
            worst_similarity = std::min(worst_similarity, similarity);
            out.require(similarity > 1.0 - 1e-8, entry.name + " constant ground state");
            out.require(std::abs(a.spectrum.eigenvalues[0] + v) < 1e-3, entry.name + " lambda0 = -V");
        }
    }
    // The separable backend carries the analytic potential, so equality is sharp there.
    for (double k : {0.33, 0.5, 0.7}) {
        SurfaceSpec spec;
        spec.kind = SurfaceKind::csc_torus;
        spec.k = k;
        const SpectralResult sor = analyze(spec, Method::sor, 4).spectrum;
        out.require(std::abs(sor.eigenvalues[0] + 1.0) < 1e-9, "SOR lambda0 = -1");
        out.require(sor.constant_similarity(0) > 1.0 - 1e-12, "SOR constant ground state");
    }
    out.detail << "fleet of " << fleet("all").size() << ", worst cosine similarity=" << worst_similarity;
    return out;
}

Outcome scaling_law()
{
    Outcome out;
    const PhysicalUnits units;
    double worst_gap = 0.0;
    double worst_bound = 0.0;
    for (const TriangleMesh& base : {ellipsoid(1.0, 1.2, 0.8, 4), torus(2.0, 1.0, 64, 32)}) {
        const SpectralResult ref = solve_fem(base, 6);
        const double r1 = gap_bound_result1(geometric_summary(base), units);
        for (double lambda : {0.5, 2.0}) {
            const TriangleMesh scaled = scale_mesh(base, lambda);
            const SpectralResult s = solve_fem(scaled, 6);
            for (std::size_t k = 1; k < 6; ++k) {
                const double expected = (ref.eigenvalues[k] - ref.eigenvalues[0]) / (lambda * lambda);
                worst_gap = std::max(worst_gap, rel(s.eigenvalues[k] - s.eigenvalues[0], expected));
            }
            worst_bound =
                std::max(worst_bound, rel(gap_bound_result1(geometric_summary(scaled), units), r1 / (lambda * lambda)));
        }
    }
    out.detail << "worst gap err=" << worst_gap << " worst result1 err=" << worst_bound;
    out.require(worst_gap < 0.005, "gaps scale within 0.5%");
    out.require(worst_bound < 1e-10, "result1 scales exactly");
    return out;
}

Outcome report_only_structure()
{
    Outcome out;
    const PhysicalUnits units;
    SurfaceSpec spec;
    spec.kind = SurfaceKind::csc_torus;
    spec.k = 0.5;
    spec.sor_samples = 400;
    const Analysis a = analyze(spec, Method::sor, 36);
    const GeometricSummary& g = a.geom;
    const double spread_term = units.energy_factor() * g.potential_spread();
    double worst = 0.0;
    for (double c_g : {0.1, 0.7, 3.0}) {
        const double base = gap_bound_result2(g, 2, c_g, units) - spread_term;
        for (int k = 3; k <= 12; ++k) {
            worst = std::max(worst, rel(gap_bound_result2(g, k, c_g, units) - spread_term, base * k / 2.0));
            worst = std::max(worst, rel(gap_bound_result2(g, k, 2.0 * c_g, units) - spread_term, base * k / 4.0));
        }
    }
    out.require(worst < 1e-12, "linear in k, halves when c_g doubles");

    BoundOptions options;
    options.c_g = 0.5;
    options.result2_k = 3;
    const BoundReport report = make_bound_report("csc", g, a.spectrum, units, options);
    for (const auto& v : report.verdicts) {
        out.require(v.bound != "result2" && v.bound != "weyl", "no verdict for report-only bounds");
    }
    out.require(report.result2.has_value() && report.weyl.has_value(), "report-only values emitted");
    const Json j = bound_report_json(report);
    out.require(j["bounds"]["result2"]["status"].get<std::string>().find("report-only") == 0, "result2 marked");
    out.require(j["weyl"]["status"].get<std::string>().find("report-only") == 0, "weyl marked");
    bool threw = false;
    try {
        (void)gap_bound_result2(g, 2, std::nullopt, units);
    } catch (const DomainError&) {
        threw = true;
    }
    out.require(threw, "no default c_g");
    out.detail << "structure err=" << worst << ", weyl ratios=" << report.weyl->ratios.size();
    return out;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"AC1 sphere exact gap", sphere_exact_gap},
        {"AC2 Gauss-Bonnet", gauss_bonnet},
        {"AC3 Willmore", willmore},
        {"AC4 CSC family", csc_family},
        {"AC5 quotient torus bound", quotient_torus_bound},
        {"AC6 backend agreement", backend_agreement},
        {"AC7 ground-state bound", ground_state_bound},
        {"AC8 scaling law", scaling_law},
        {"AC9 report-only bounds", report_only_structure},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        const auto start = Clock::now();
        Outcome outcome;
        try {
            outcome = run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail << "exception: " << e.what();
        }
        std::printf("%s %s (%.1fs): %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(), seconds_since(start),
                    outcome.detail.str().c_str());
        std::fflush(stdout);
        failures += outcome.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
