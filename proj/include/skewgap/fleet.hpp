#pragma once

#include "skewgap/bounds.hpp"
#include "skewgap/csc.hpp"
#include "skewgap/mesh.hpp"
#include "skewgap/spectral.hpp"
#include "skewgap/surfaces.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skewgap {

enum class SurfaceKind { sphere, ellipsoid, torus, csc_torus, mesh_file };
enum class Method { fem, sor };

SurfaceKind parse_surface_kind(const std::string& name);
std::string to_string(SurfaceKind kind);
Method parse_method(const std::string& name);
std::string to_string(Method method);

/// Builtin surface and its resolution. Fields not used by a kind are ignored.
struct SurfaceSpec {
    SurfaceKind kind = SurfaceKind::sphere;
    double radius = 1.0;
    /// Ellipsoid semi-axes.
    double a = 1.0, b = 1.0, c = 1.5;
    /// Torus radii.
    double major_radius = 2.0, minor_radius = 1.0;
    /// CSC parameter and branch sign.
    double k = 0.5;
    int sign = 1;
    std::string mesh_path;
    /// Uniform scale applied after construction.
    double scale = 1.0;

    /// Icosphere subdivision level for spheres and ellipsoids.
    int subdivisions = 5;
    /// Rings along the profile and around the axis for revolved meshes.
    int n_profile = 96;
    int n_theta = 192;
    /// Profile samples for the SOR backend.
    int sor_samples = 1200;

    std::string label() const;
};

TriangleMesh build_mesh(const SurfaceSpec& spec);

/// Profile form of the surface; throws DomainError for surfaces that are not of
/// revolution about the z axis (triaxial ellipsoids, mesh files).
RevolutionSurface build_revolution(const SurfaceSpec& spec);

struct Analysis {
    GeometricSummary geom;
    SpectralResult spectrum;
};

/// Geometric summary and lowest `count` eigenpairs with the chosen backend.
/// FEM spectra of CSC quotient tori carry parity labels.
Analysis analyze(const SurfaceSpec& spec, Method method, int count, double tol = kDefaultSolverTol);

struct FleetEntry {
    SurfaceSpec spec;
    Method method = Method::fem;
    std::string name;
};

/// "fast": a sphere and one torus. "all": spheres, two ellipsoids, round tori
/// of two aspect ratios and CSC quotient tori for k in {0.33, 0.5, 0.7}.
std::vector<FleetEntry> fleet(const std::string& suite);

struct FleetResult {
    FleetEntry entry;
    BoundReport report;
    double seconds = 0.0;
    /// Set when the run failed numerically; the report is then empty.
    std::string error;

    bool pass() const { return error.empty() && report.all_pass(); }
};

FleetResult run_fleet_entry(const FleetEntry& entry, const PhysicalUnits& units, const BoundOptions& options,
                            int count = 12);

} // namespace skewgap
