// Command-line front end: csc, spectrum, bounds and verify subcommands.

#include "skewgap/bounds.hpp"
#include "skewgap/csc.hpp"
#include "skewgap/curvature.hpp"
#include "skewgap/error.hpp"
#include "skewgap/fleet.hpp"
#include "skewgap/mesh_io.hpp"
#include "skewgap/profile.hpp"
#include "skewgap/report.hpp"
#include "skewgap/spectral.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace skewgap;

enum ExitCode { kSuccess = 0, kUsage = 1, kNumerical = 2, kCertification = 3 };

struct SurfaceOptions {
    std::string surface = "sphere";
    std::string mesh;
    std::string method = "fem";
    SurfaceSpec spec;
};

void add_surface_options(CLI::App* cmd, SurfaceOptions& o)
{
    cmd->add_option("--surface", o.surface, "Builtin surface")
        ->check(CLI::IsMember({"sphere", "ellipsoid", "torus", "csc-torus"}));
    cmd->add_option("--mesh", o.mesh, "Closed triangle mesh (.obj or .off) instead of a builtin surface");
    cmd->add_option("--method", o.method, "Spectral backend")->check(CLI::IsMember({"fem", "sor"}));
    cmd->add_option("--radius", o.spec.radius, "Sphere radius")->check(CLI::PositiveNumber);
    cmd->add_option("--a", o.spec.a, "Ellipsoid semi-axis along x")->check(CLI::PositiveNumber);
    cmd->add_option("--b", o.spec.b, "Ellipsoid semi-axis along y")->check(CLI::PositiveNumber);
    cmd->add_option("--c", o.spec.c, "Ellipsoid semi-axis along z")->check(CLI::PositiveNumber);
    cmd->add_option("--R", o.spec.major_radius, "Torus major radius")->check(CLI::PositiveNumber);
    cmd->add_option("--r", o.spec.minor_radius, "Torus minor radius")->check(CLI::PositiveNumber);
    cmd->add_option("--k", o.spec.k, "CSC parameter (csc-torus)");
    cmd->add_option("--sign", o.spec.sign, "CSC branch sign")->check(CLI::IsMember({-1, 1}));
    cmd->add_option("--scale", o.spec.scale, "Uniform scale factor")->check(CLI::PositiveNumber);
    cmd->add_option("--subdiv", o.spec.subdivisions, "Icosphere subdivision level")->check(CLI::Range(0, 8));
    cmd->add_option("--n-profile", o.spec.n_profile, "Rings along the profile of revolved meshes")
        ->check(CLI::Range(4, 4096));
    cmd->add_option("--n-theta", o.spec.n_theta, "Vertices per ring of revolved meshes")->check(CLI::Range(3, 8192));
    cmd->add_option("--sor-samples", o.spec.sor_samples, "Profile nodes for the SOR backend")
        ->check(CLI::Range(16, 200000));
}

SurfaceSpec resolve(const SurfaceOptions& o)
{
    SurfaceSpec spec = o.spec;
    if (!o.mesh.empty()) {
        spec.kind = SurfaceKind::mesh_file;
        spec.mesh_path = o.mesh;
    } else {
        spec.kind = parse_surface_kind(o.surface);
    }
    return spec;
}

PhysicalUnits make_units(double hbar, double mass)
{
    PhysicalUnits u{hbar, mass};
    u.energy_factor();
    return u;
}

void emit(const Json& j, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        write_json(path, j);
    }
}

// Same surface with every resolution parameter coarsened `level` times.
SurfaceSpec coarsened(SurfaceSpec spec, int level)
{
    for (int i = 0; i < level; ++i) {
        spec.subdivisions = std::max(0, spec.subdivisions - 1);
        spec.n_profile = std::max(spec.kind == SurfaceKind::csc_torus ? 30 : 4, spec.n_profile / 2);
        spec.n_profile += spec.n_profile % 2;
        spec.n_theta = std::max(3, spec.n_theta / 2);
        spec.sor_samples = std::max(16, spec.sor_samples / 2);
    }
    return spec;
}

// ---------------------------------------------------------------------------

struct CscArgs {
    double k = 0.0;
    int sign = 1;
    int samples = 201;
    int periods = 2;
    int n_theta = 96;
    int rings = 96;
    std::string out_dir = ".";
    std::string obj;
};

int run_csc(const CscArgs& a)
{
    namespace fs = std::filesystem;
    const std::vector<CscBranch> branches = csc_intervals(a.k);
    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    const fs::path dir(a.out_dir);
    write_json((dir / "branches.json").string(), branch_report_json(a.k, branches));

    const bool degenerate = !branches.empty() && branches.front().degenerate;
    std::cout << "k = " << a.k << ", k0 = " << csc_bifurcation_value() << ": " << branches.size()
              << (branches.size() == 1 ? " branch" : " branches") << (degenerate ? " (degenerate)" : "") << '\n';
    if (degenerate) {
        if (!a.obj.empty()) {
            throw DomainError("k lies at the bifurcation value k0; no surface is generated");
        }
        std::cout << "k is within the degeneracy tolerance of k0; no profiles or surface written\n";
        return kSuccess;
    }

    const CscParams params{a.k, a.sign};
    for (const auto& b : branches) {
        const ProfileCurve base = csc_profile(params, b, a.samples);
        const std::string kind = to_string(b.kind);
        write_profile_csv((dir / ("profile_" + kind + ".csv")).string(), base);
        if (b.kind != BranchKind::inner) {
            const ProfileCurve stacked = stack_profile(base, a.periods);
            write_profile_csv((dir / ("stacked_" + kind + ".csv")).string(), stacked);
            std::cout << kind << " branch t in [" << b.t_lo << ", " << b.t_hi << "], period "
                      << stacked.period.value_or(0.0) << ", joins " << (stacked.smooth_joins() ? "smooth" : "not smooth")
                      << '\n';
        } else {
            std::cout << kind << " branch t in [" << b.t_lo << ", " << b.t_hi << "]\n";
        }
    }
    if (!a.obj.empty()) {
        const TriangleMesh quotient = quotient_torus(params, a.rings, a.n_theta);
        save_mesh(a.obj, unrolled(quotient, a.periods), format_from_path(a.obj));
        std::cout << "wrote " << a.periods << "-period surface to " << a.obj << '\n';
    }
    return kSuccess;
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
    SurfaceOptions surface;
    int count = 10;
    double tol = kDefaultSolverTol;
    double hbar = 1.0;
    double mass = 1.0;
    int refine = 1;
    std::string out;
    std::string curvature_csv;
};

int run_spectrum(const SpectrumArgs& a)
{
    const SurfaceSpec spec = resolve(a.surface);
    const Method method = parse_method(a.surface.method);
    const PhysicalUnits units = make_units(a.hbar, a.mass);

    const Analysis analysis = analyze(spec, method, a.count, a.tol);
    Json j = spectrum_json(analysis.spectrum, units);
    j["surface"] = spec.label();
    j["method"] = to_string(method);
    j["summary"] = summary_json(analysis.geom);

    if (!a.curvature_csv.empty()) {
        if (method != Method::fem) {
            throw DomainError("--curvature-csv needs the fem method");
        }
        std::ofstream csv(a.curvature_csv);
        if (!csv) {
            throw Error("cannot open '" + a.curvature_csv + "' for writing");
        }
        write_curvature_csv(csv, discrete_curvatures(build_mesh(spec)));
    }
    if (a.refine > 1) {
        Json levels = Json::array();
        for (int level = a.refine - 1; level >= 0; --level) {
            const Analysis coarse = level == 0 ? analysis : analyze(coarsened(spec, level), method, a.count, a.tol);
            levels.push_back(Json{{"mesh_size", coarse.spectrum.mesh_size}, {"lambda", coarse.spectrum.eigenvalues}});
        }
        j["convergence"] = levels;
    }
    emit(j, a.out);
    return kSuccess;
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
    SurfaceOptions surface;
    std::string spectrum;
    int count = 10;
    double tol = 0.02;
    double solver_tol = kDefaultSolverTol;
    double hbar = 1.0;
    double mass = 1.0;
    std::optional<double> c_g;
    int gap_index = 2;
    std::string out;
};

int run_bounds(const BoundsArgs& a)
{
    const SurfaceSpec spec = resolve(a.surface);
    const Method method = parse_method(a.surface.method);
    PhysicalUnits units = make_units(a.hbar, a.mass);

    GeometricSummary geom;
    SpectralResult spectrum;
    if (!a.spectrum.empty()) {
        const Json j = read_json(a.spectrum);
        spectrum = spectrum_from_json(j);
        if (j.contains("units")) {
            units = units_from_json(j.at("units"));
        }
        if (method == Method::sor) {
            geom = sor_summary(sor_operator(build_revolution(spec)));
        } else {
            geom = geometric_summary(build_mesh(spec));
        }
    } else {
        Analysis analysis = analyze(spec, method, a.count, a.solver_tol);
        geom = analysis.geom;
        spectrum = std::move(analysis.spectrum);
    }

    BoundOptions options;
    options.tol = a.tol;
    options.c_g = a.c_g;
    options.result2_k = a.gap_index;
    options.lambda0_slack = 10.0 * a.solver_tol;
    const BoundReport report = make_bound_report(spec.label(), geom, spectrum, units, options);
    emit(bound_report_json(report), a.out);
    for (const auto& v : report.verdicts) {
        std::cerr << std::left << std::setw(20) << v.bound << (v.pass ? "pass" : "FAIL") << "  margin " << v.margin
                  << '\n';
    }
    return report.all_pass() ? kSuccess : kCertification;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string suite = "fast";
    std::string json;
    double tol = 0.02;
    int count = 12;
};

int run_verify(const VerifyArgs& a)
{
    const PhysicalUnits units;
    BoundOptions options;
    options.tol = a.tol;
    options.lambda0_slack = 10.0 * kDefaultSolverTol;

    Json rows = Json::array();
    bool all_pass = true;
    bool numerical_failure = false;
    std::printf("%-24s %-6s %12s %12s %10s %8s  %s\n", "surface", "method", "gap", "result1", "margin", "time[s]",
                "status");
    for (const auto& entry : fleet(a.suite)) {
        const FleetResult r = run_fleet_entry(entry, units, options, a.count);
        Json row{{"surface", entry.name}, {"method", to_string(entry.method)}, {"seconds", r.seconds}};
        if (!r.error.empty()) {
            numerical_failure = true;
            row["error"] = r.error;
            std::printf("%-24s %-6s %12s %12s %10s %8.2f  ERROR %s\n", entry.name.c_str(),
                        to_string(entry.method).c_str(), "-", "-", "-", r.seconds, r.error.c_str());
        } else {
            const double gap = r.report.gaps.empty() ? 0.0 : r.report.gaps.front();
            const double margin = r.report.verdicts.front().margin;
            std::printf("%-24s %-6s %12.6f %12.6f %10.4f %8.2f  %s\n", entry.name.c_str(),
                        to_string(entry.method).c_str(), gap, r.report.result1, margin, r.seconds,
                        r.pass() ? "pass" : "FAIL");
            row["report"] = bound_report_json(r.report);
        }
        row["pass"] = r.pass();
        all_pass = all_pass && r.pass();
        rows.push_back(row);
    }
    if (!a.json.empty()) {
        write_json(a.json, Json{{"suite", a.suite}, {"pass", all_pass}, {"surfaces", rows}});
    }
    std::printf("overall: %s\n", all_pass ? "pass" : "FAIL");
    if (numerical_failure) {
        return kNumerical;
    }
    return all_pass ? kSuccess : kCertification;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral gaps of a particle confined to a curved surface"};
    app.set_config("--config", "", "Read options from a key = value file");
    app.require_subcommand(1);

    CscArgs csc;
    auto* csc_cmd = app.add_subcommand("csc", "Constant-skew profile family: branches, profiles and surfaces");
    csc_cmd->add_option("--k", csc.k, "Family parameter")->required();
    csc_cmd->add_option("--sign", csc.sign, "Branch sign")->check(CLI::IsMember({-1, 1}));
    csc_cmd->add_option("--samples", csc.samples, "Samples per branch profile")->check(CLI::Range(16, 1000000));
    csc_cmd->add_option("--periods", csc.periods, "Periods in the stacked profile and surface")
        ->check(CLI::Range(1, 1000));
    csc_cmd->add_option("--rings", csc.rings, "Profile rings per period of the surface")->check(CLI::Range(30, 4096));
    csc_cmd->add_option("--n-theta", csc.n_theta, "Vertices per ring of the surface")->check(CLI::Range(3, 8192));
    csc_cmd->add_option("--out-dir", csc.out_dir, "Directory for the JSON report and CSV profiles");
    csc_cmd->add_option("--obj", csc.obj, "Write the stacked outer surface (.obj or .off)");

    SpectrumArgs spectrum;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Lowest eigenvalues of -Laplace - (H^2 - K)");
    add_surface_options(spectrum_cmd, spectrum.surface);
    spectrum_cmd->add_option("--count", spectrum.count, "Number of eigenpairs")->check(CLI::Range(1, 2000));
    spectrum_cmd->add_option("--tol", spectrum.tol, "Eigenpair residual tolerance")->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--hbar", spectrum.hbar, "Reduced Planck constant")->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--mass", spectrum.mass, "Particle mass")->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--refine", spectrum.refine, "Refinement levels for a convergence study")
        ->check(CLI::Range(1, 6));
    spectrum_cmd->add_option("--out", spectrum.out, "Output JSON (default stdout)");
    spectrum_cmd->add_option("--curvature-csv", spectrum.curvature_csv, "Per-vertex curvature CSV (fem only)");

    BoundsArgs bounds;
    auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate and certify the gap bounds");
    add_surface_options(bounds_cmd, bounds.surface);
    bounds_cmd->add_option("--spectrum", bounds.spectrum, "Spectrum JSON from the spectrum subcommand");
    bounds_cmd->add_option("--count", bounds.count, "Eigenpairs to compute when no spectrum is given")
        ->check(CLI::Range(2, 2000));
    bounds_cmd->add_option("--tol", bounds.tol, "Relative certification tolerance")->check(CLI::NonNegativeNumber);
    bounds_cmd->add_option("--solver-tol", bounds.solver_tol, "Eigenpair residual tolerance")
        ->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--hbar", bounds.hbar, "Reduced Planck constant")->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--mass", bounds.mass, "Particle mass")->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--c-g", bounds.c_g, "Constant c(g) for the report-only k-th gap bound")
        ->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--gap-index", bounds.gap_index, "k of the report-only k-th gap bound")
        ->check(CLI::Range(2, 100000));
    bounds_cmd->add_option("--out", bounds.out, "Output JSON (default stdout)");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Certify the bounds on the test fleet");
    verify_cmd->add_option("--suite", verify.suite, "Fleet subset")->check(CLI::IsMember({"fast", "all"}));
    verify_cmd->add_option("--json", verify.json, "Machine-readable summary");
    verify_cmd->add_option("--tol", verify.tol, "Relative certification tolerance")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*csc_cmd) {
            return run_csc(csc);
        }
        if (*spectrum_cmd) {
            return run_spectrum(spectrum);
        }
        if (*bounds_cmd) {
            return run_bounds(bounds);
        }
        if (*verify_cmd) {
            return run_verify(verify);
        }
    } catch (const ConvergenceError& e) {
        std::cerr << "skewgap: numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "skewgap: error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
