#include "skewgap/fleet.hpp"

#include "skewgap/error.hpp"
#include "skewgap/mesh_io.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace skewgap {

SurfaceKind parse_surface_kind(const std::string& name)
{
    if (name == "sphere") {
        return SurfaceKind::sphere;
    }
    if (name == "ellipsoid") {
        return SurfaceKind::ellipsoid;
    }
    if (name == "torus") {
        return SurfaceKind::torus;
    }
    if (name == "csc-torus") {
        return SurfaceKind::csc_torus;
    }
    if (name == "mesh") {
        return SurfaceKind::mesh_file;
    }
    throw DomainError("unknown surface '" + name + "' (expected sphere, ellipsoid, torus, csc-torus or mesh)");
}

std::string to_string(SurfaceKind kind)
{
    switch (kind) {
    case SurfaceKind::sphere:
        return "sphere";
    case SurfaceKind::ellipsoid:
        return "ellipsoid";
    case SurfaceKind::torus:
        return "torus";
    case SurfaceKind::csc_torus:
        return "csc-torus";
    case SurfaceKind::mesh_file:
        return "mesh";
    }
    return "unknown";
}

Method parse_method(const std::string& name)
{
    if (name == "fem") {
        return Method::fem;
    }
    if (name == "sor") {
        return Method::sor;
    }
    throw DomainError("unknown method '" + name + "' (expected fem or sor)");
}

std::string to_string(Method method)
{
    return method == Method::fem ? "fem" : "sor";
}

std::string SurfaceSpec::label() const
{
    std::ostringstream os;
    switch (kind) {
    case SurfaceKind::sphere:
        os << "sphere(r=" << radius << ")";
        break;
    case SurfaceKind::ellipsoid:
        os << "ellipsoid(" << a << "," << b << "," << c << ")";
        break;
    case SurfaceKind::torus:
        os << "torus(R=" << major_radius << ",r=" << minor_radius << ")";
        break;
    case SurfaceKind::csc_torus:
        os << "csc-torus(k=" << k << ")";
        break;
    case SurfaceKind::mesh_file:
        os << mesh_path;
        break;
    }
    if (scale != 1.0) {
        os << "x" << scale;
    }
    return os.str();
}

TriangleMesh build_mesh(const SurfaceSpec& spec)
{
    TriangleMesh mesh = [&] {
        switch (spec.kind) {
        case SurfaceKind::sphere:
            return icosphere(spec.subdivisions, spec.radius);
        case SurfaceKind::ellipsoid:
            return ellipsoid(spec.a, spec.b, spec.c, spec.subdivisions);
        case SurfaceKind::torus:
            return torus(spec.major_radius, spec.minor_radius, spec.n_theta, spec.n_profile);
        case SurfaceKind::csc_torus:
            return quotient_torus({spec.k, spec.sign}, spec.n_profile, spec.n_theta);
        case SurfaceKind::mesh_file:
            if (spec.mesh_path.empty()) {
                throw DomainError("mesh surface needs a file path");
            }
            return load_mesh(spec.mesh_path);
        }
        throw DomainError("unknown surface kind");
    }();
    return spec.scale == 1.0 ? mesh : scale_mesh(mesh, spec.scale);
}

RevolutionSurface build_revolution(const SurfaceSpec& spec)
{
    RevolutionSurface surface = [&] {
        switch (spec.kind) {
        case SurfaceKind::sphere:
            return sphere_of_revolution(spec.radius, spec.sor_samples);
        case SurfaceKind::ellipsoid:
            if (spec.a != spec.b) {
                throw DomainError("the SOR backend needs an ellipsoid with a = b");
            }
            return spheroid_of_revolution(spec.a, spec.c, spec.sor_samples);
        case SurfaceKind::torus:
            return torus_of_revolution(spec.major_radius, spec.minor_radius, spec.sor_samples);
        case SurfaceKind::csc_torus: {
            const int n = spec.sor_samples + spec.sor_samples % 2;
            return csc_quotient_surface({spec.k, spec.sign}, std::max(n, 30));
        }
        case SurfaceKind::mesh_file:
            throw DomainError("the SOR backend needs a builtin surface of revolution, not a mesh file");
        }
        throw DomainError("unknown surface kind");
    }();
    if (spec.scale != 1.0) {
        if (!(spec.scale > 0.0)) {
            throw DomainError("scale must be positive");
        }
        for (auto& p : surface.profile.samples) {
            p.t *= spec.scale;
            p.g *= spec.scale;
            p.s *= spec.scale;
        }
        if (surface.profile.period) {
            *surface.profile.period *= spec.scale;
        }
        for (double& v : surface.potential) {
            v /= spec.scale * spec.scale;
        }
    }
    return surface;
}

Analysis analyze(const SurfaceSpec& spec, Method method, int count, double tol)
{
    Analysis out;
    if (method == Method::sor) {
        const SorOperator op = sor_operator(build_revolution(spec));
        out.geom = sor_summary(op);
        out.spectrum = solve_sor(op, count, tol);
        return out;
    }
    const TriangleMesh mesh = build_mesh(spec);
    const CurvatureField field = discrete_curvatures(mesh);
    out.geom = geometric_summary(mesh, field);
    out.spectrum = lowest_eigenpairs(assemble_fem(mesh, field), count, tol);
    out.spectrum.mesh_size = max_edge_length(mesh);
    if (spec.kind == SurfaceKind::csc_torus) {
        out.spectrum = parity_classify(out.spectrum, ring_reflection(spec.n_profile, spec.n_theta));
    }
    return out;
}

std::vector<FleetEntry> fleet(const std::string& suite)
{
    if (suite != "fast" && suite != "all") {
        throw DomainError("unknown suite '" + suite + "' (expected fast or all)");
    }
    std::vector<FleetEntry> out;
    SurfaceSpec sphere;
    sphere.kind = SurfaceKind::sphere;
    sphere.subdivisions = 5;
    out.push_back({sphere, Method::fem, "sphere"});

    SurfaceSpec round_torus;
    round_torus.kind = SurfaceKind::torus;
    round_torus.major_radius = 2.0;
    round_torus.minor_radius = 1.0;
    round_torus.n_profile = 64;
    round_torus.n_theta = 128;
    out.push_back({round_torus, Method::fem, "torus R=2 r=1"});
    if (suite == "fast") {
        return out;
    }

    SurfaceSpec sphere2 = sphere;
    sphere2.radius = 2.0;
    sphere2.subdivisions = 4;
    out.push_back({sphere2, Method::fem, "sphere r=2"});

    SurfaceSpec prolate;
    prolate.kind = SurfaceKind::ellipsoid;
    prolate.a = 1.0;
    prolate.b = 1.0;
    prolate.c = 1.5;
    prolate.subdivisions = 5;
    out.push_back({prolate, Method::fem, "ellipsoid 1:1:1.5"});

    SurfaceSpec triaxial = prolate;
    triaxial.b = 1.2;
    triaxial.c = 0.8;
    out.push_back({triaxial, Method::fem, "ellipsoid 1:1.2:0.8"});

    SurfaceSpec fat_torus = round_torus;
    fat_torus.major_radius = 3.0;
    out.push_back({fat_torus, Method::fem, "torus R=3 r=1"});

    for (double k : {0.33, 0.5, 0.7}) {
        SurfaceSpec csc;
        csc.kind = SurfaceKind::csc_torus;
        csc.k = k;
        csc.n_profile = 96;
        csc.n_theta = 192;
        std::ostringstream name;
        name << "csc-torus k=" << k;
        out.push_back({csc, Method::fem, name.str()});
    }
    return out;
}

FleetResult run_fleet_entry(const FleetEntry& entry, const PhysicalUnits& units, const BoundOptions& options,
                            int count)
{
    FleetResult result;
    result.entry = entry;
    const auto start = std::chrono::steady_clock::now();
    try {
        const Analysis analysis = analyze(entry.spec, entry.method, count);
        result.report = make_bound_report(entry.name, analysis.geom, analysis.spectrum, units, options);
    } catch (const Error& e) {
        result.error = e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace skewgap
