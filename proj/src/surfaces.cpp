#include "skewgap/surfaces.hpp"

#include "skewgap/curvature.hpp"
#include "skewgap/error.hpp"
#include "skewgap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace skewgap {

namespace {

void orient_outwards(const std::vector<Vec3>& vertices, std::vector<Face>& faces)
{
    double volume = 0.0;
    for (const Face& f : faces) {
        volume += vertices[f[0]].dot(vertices[f[1]].cross(vertices[f[2]]));
    }
    if (volume < 0.0) {
        for (Face& f : faces) {
            std::swap(f[1], f[2]);
        }
    }
}

void icosahedron_data(std::vector<Vec3>& vertices, std::vector<Face>& faces)
{
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    vertices = {{-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
                {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& v : vertices) {
        v.normalize();
    }
    faces = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
             {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
             {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
    orient_outwards(vertices, faces);
}

void subdivide(std::vector<Vec3>& vertices, std::vector<Face>& faces)
{
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        auto [it, inserted] = midpoint.try_emplace(key, static_cast<int>(vertices.size()));
        if (inserted) {
            vertices.push_back((0.5 * (vertices[a] + vertices[b])).normalized());
        }
        return it->second;
    };
    std::vector<Face> refined;
    refined.reserve(4 * faces.size());
    for (const Face& f : faces) {
        const int ab = mid(f[0], f[1]);
        const int bc = mid(f[1], f[2]);
        const int ca = mid(f[2], f[0]);
        refined.push_back({f[0], ab, ca});
        refined.push_back({f[1], bc, ab});
        refined.push_back({f[2], ca, bc});
        refined.push_back({ab, bc, ca});
    }
    faces = std::move(refined);
}

} // namespace

TriangleMesh icosahedron(double radius)
{
    return icosphere(0, radius);
}

TriangleMesh icosphere(int subdivisions, double radius)
{
    if (subdivisions < 0 || !(radius > 0.0)) {
        throw DomainError("icosphere needs subdivisions >= 0 and radius > 0");
    }
    std::vector<Vec3> vertices;
    std::vector<Face> faces;
    icosahedron_data(vertices, faces);
    for (int i = 0; i < subdivisions; ++i) {
        subdivide(vertices, faces);
    }
    for (auto& v : vertices) {
        v *= radius;
    }
    return TriangleMesh(std::move(vertices), std::move(faces));
}

TriangleMesh ellipsoid(double a, double b, double c, int subdivisions)
{
    if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
        throw DomainError("ellipsoid semi-axes must be positive");
    }
    const TriangleMesh sphere = icosphere(subdivisions);
    std::vector<Vec3> vertices = sphere.vertices();
    for (auto& v : vertices) {
        v = Vec3(a * v.x(), b * v.y(), c * v.z());
    }
    return TriangleMesh(std::move(vertices), sphere.faces());
}

TriangleMesh torus(double major_radius, double minor_radius, int n_major, int n_minor)
{
    if (n_minor < 3) {
        throw DomainError("torus needs n_minor >= 3");
    }
    return revolve(torus_of_revolution(major_radius, minor_radius, n_minor).profile, n_major, Closure::periodic);
}

TriangleMesh genus_two()
{
    const TriangleMesh left = torus(2.0, 0.7, 16, 10);
    const auto n = static_cast<int>(left.num_vertices());
    const Vec3 offset(7.0, 0.0, 0.0);

    std::vector<Vec3> vertices = left.vertices();
    for (const auto& v : left.vertices()) {
        vertices.push_back(v + offset);
    }

    auto centroid_x = [&](const Face& f, double shift) {
        return (left.vertices()[f[0]].x() + left.vertices()[f[1]].x() + left.vertices()[f[2]].x()) / 3.0 + shift;
    };
    std::size_t cut_left = 0, cut_right = 0;
    for (std::size_t f = 0; f < left.num_faces(); ++f) {
        if (centroid_x(left.faces()[f], 0.0) > centroid_x(left.faces()[cut_left], 0.0)) {
            cut_left = f;
        }
        if (centroid_x(left.faces()[f], 0.0) < centroid_x(left.faces()[cut_right], 0.0)) {
            cut_right = f;
        }
    }

    std::vector<Face> faces;
    for (std::size_t f = 0; f < left.num_faces(); ++f) {
        if (f != cut_left) {
            faces.push_back(left.faces()[f]);
        }
    }
    for (std::size_t f = 0; f < left.num_faces(); ++f) {
        if (f != cut_right) {
            const Face& g = left.faces()[f];
            faces.push_back({g[0] + n, g[1] + n, g[2] + n});
        }
    }
    // Tube between hole (a, b, c) and hole (d, e, f). The remaining faces traverse
    // each hole boundary against the removed face, so the tube runs a -> b -> c
    // on one side and d -> e -> f on the other, with vertices paired (a, e),
    // (b, d), (c, f).
    const Face& h0 = left.faces()[cut_left];
    const Face& h1 = left.faces()[cut_right];
    const int a = h0[0], b = h0[1], c = h0[2];
    const int d = h1[0] + n, e = h1[1] + n, f = h1[2] + n;
    const std::array<std::array<int, 4>, 3> quads = {{{a, b, d, e}, {b, c, f, d}, {c, a, e, f}}};
    for (const auto& q : quads) {
        faces.push_back({q[0], q[1], q[2]});
        faces.push_back({q[0], q[2], q[3]});
    }
    return TriangleMesh(std::move(vertices), std::move(faces));
}

RevolutionSurface sphere_of_revolution(double radius, int n_samples)
{
    return spheroid_of_revolution(radius, radius, n_samples);
}

RevolutionSurface spheroid_of_revolution(double a, double c, int n_samples)
{
    if (!(a > 0.0 && c > 0.0) || n_samples < 3) {
        throw DomainError("spheroid profile needs positive semi-axes and at least 3 samples");
    }
    RevolutionSurface surface;
    surface.closure = Closure::capped;
    auto speed = [&](double phi) { return std::hypot(a * std::cos(phi), c * std::sin(phi)); };
    double s = 0.0;
    double previous = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double phi = M_PI * i / (n_samples - 1);
        if (i > 0) {
            s += a == c ? a * (phi - previous) : integrate(speed, previous, phi, 1e-14, 1e-15).value;
        }
        previous = phi;
        const bool pole = i == 0 || i == n_samples - 1;
        const double x = pole ? 0.0 : a * std::sin(phi);
        surface.profile.samples.push_back({x, -c * std::cos(phi), s});
        double v = 0.0;
        if (!pole) {
            v = parametric_sor_curvatures(x, a * std::cos(phi), -a * std::sin(phi), c * std::sin(phi),
                                          c * std::cos(phi))
                    .potential();
        }
        surface.potential.push_back(v);
    }
    return surface;
}

RevolutionSurface torus_of_revolution(double major_radius, double minor_radius, int n_samples)
{
    if (!(minor_radius > 0.0) || !(major_radius > minor_radius) || n_samples < 3) {
        throw DomainError("torus profile needs R > r > 0 and at least 3 samples");
    }
    RevolutionSurface surface;
    surface.closure = Closure::periodic;
    for (int i = 0; i <= n_samples; ++i) {
        const double v = 2.0 * M_PI * i / n_samples;
        const int j = i % n_samples;
        const double vj = 2.0 * M_PI * j / n_samples;
        const double x = major_radius + minor_radius * std::cos(vj);
        // The closing sample repeats the first one exactly.
        surface.profile.samples.push_back({x, minor_radius * std::sin(vj), minor_radius * v});
        surface.potential.push_back(parametric_sor_curvatures(x, -minor_radius * std::sin(vj),
                                                              -minor_radius * std::cos(vj),
                                                              minor_radius * std::cos(vj),
                                                              -minor_radius * std::sin(vj))
                                        .potential());
    }
    surface.profile.period = 0.0;
    return surface;
}

} // namespace skewgap
