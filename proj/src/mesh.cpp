#include "skewgap/mesh.hpp"

#include "skewgap/error.hpp"
#include "skewgap/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace skewgap {

namespace {

struct HalfEdge {
    std::uint64_t key; // undirected (min, max) pair
    int from;
    int to;
    int face;
    int lift_delta; // lift(to) - lift(from) within the face
};

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};

std::string edge_name(int a, int b)
{
    std::ostringstream os;
    os << "(" << a << ", " << b << ")";
    return os.str();
}

} // namespace

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices, std::vector<Face> faces)
    : vertices_(std::move(vertices)), faces_(std::move(faces))
{
    validate_and_build();
}

TriangleMesh::TriangleMesh(std::vector<Vec3> vertices,
                           std::vector<Face> faces,
                           const Vec3& period,
                           std::vector<std::array<int, 3>> lifts)
    : vertices_(std::move(vertices)), faces_(std::move(faces)), period_(period), lifts_(std::move(lifts))
{
    if (lifts_.size() != faces_.size()) {
        throw MeshError("periodic mesh needs one lift triple per face");
    }
    validate_and_build();
}

std::array<Vec3, 3> TriangleMesh::corners(std::size_t f) const
{
    const Face& face = faces_[f];
    std::array<Vec3, 3> c{vertices_[face[0]], vertices_[face[1]], vertices_[face[2]]};
    if (period_) {
        for (int k = 0; k < 3; ++k) {
            c[k] += static_cast<double>(lifts_[f][k]) * (*period_);
        }
    }
    return c;
}

Vec3 TriangleMesh::face_vector_area(std::size_t f) const
{
    const auto c = corners(f);
    return 0.5 * (c[1] - c[0]).cross(c[2] - c[0]);
}

std::span<const int> TriangleMesh::vertex_faces(std::size_t v) const
{
    return {vf_faces_.data() + vf_offsets_[v], static_cast<std::size_t>(vf_offsets_[v + 1] - vf_offsets_[v])};
}

double TriangleMesh::bounding_diagonal() const
{
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    for (const auto& v : vertices_) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    return (hi - lo).norm();
}

void TriangleMesh::validate_and_build()
{
    const auto nv = static_cast<int>(vertices_.size());
    if (nv == 0 || faces_.empty()) {
        throw MeshError("mesh has no vertices or no faces");
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (!vertices_[v].allFinite()) {
            throw MeshError("vertex " + std::to_string(v) + " has non-finite coordinates");
        }
    }

    const double diag = bounding_diagonal() + period().norm();
    const double min_area = 1e-14 * diag * diag;

    std::vector<HalfEdge> halfedges;
    halfedges.reserve(3 * faces_.size());
    for (std::size_t f = 0; f < faces_.size(); ++f) {
        const Face& face = faces_[f];
        for (int k = 0; k < 3; ++k) {
            if (face[k] < 0 || face[k] >= nv) {
                throw MeshError("face " + std::to_string(f) + " references vertex " + std::to_string(face[k]) +
                                " out of range [0, " + std::to_string(nv) + ")");
            }
        }
        if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
            throw MeshError("face " + std::to_string(f) + " repeats a vertex");
        }
        if (!(face_area(f) > min_area)) {
            throw MeshError("face " + std::to_string(f) + " is degenerate (zero area)");
        }
        for (int k = 0; k < 3; ++k) {
            const int a = face[k];
            const int b = face[(k + 1) % 3];
            const auto lo = static_cast<std::uint64_t>(std::min(a, b));
            const auto hi = static_cast<std::uint64_t>(std::max(a, b));
            const int delta = period_ ? lifts_[f][(k + 1) % 3] - lifts_[f][k] : 0;
            halfedges.push_back({lo * static_cast<std::uint64_t>(nv) + hi, a, b, static_cast<int>(f), delta});
        }
    }
    std::sort(halfedges.begin(), halfedges.end(), [](const HalfEdge& x, const HalfEdge& y) {
        return x.key != y.key ? x.key < y.key : x.face < y.face;
    });

    edges_.clear();
    edges_.reserve(halfedges.size() / 2);
    for (std::size_t i = 0; i < halfedges.size();) {
        std::size_t j = i;
        while (j < halfedges.size() && halfedges[j].key == halfedges[i].key) {
            ++j;
        }
        const HalfEdge& h0 = halfedges[i];
        const std::size_t count = j - i;
        if (count == 1) {
            throw MeshError("boundary edge " + edge_name(h0.from, h0.to) + " in face " + std::to_string(h0.face) +
                            " (mesh is not closed)");
        }
        if (count > 2) {
            throw MeshError("non-manifold edge " + edge_name(h0.from, h0.to) + " shared by " +
                            std::to_string(count) + " faces");
        }
        const HalfEdge& h1 = halfedges[i + 1];
        if (h0.from != h1.to || h0.to != h1.from) {
            throw MeshError("inconsistent orientation at edge " + edge_name(h0.from, h0.to) + " between faces " +
                            std::to_string(h0.face) + " and " + std::to_string(h1.face));
        }
        if (h0.lift_delta != -h1.lift_delta) {
            throw MeshError("inconsistent periodic lifts at edge " + edge_name(h0.from, h0.to));
        }
        edges_.push_back({h0.from, h0.to, h0.face, h1.face});
        i = j;
    }

    // vertex -> faces
    vf_offsets_.assign(vertices_.size() + 1, 0);
    for (const Face& face : faces_) {
        for (int v : face) {
            ++vf_offsets_[v + 1];
        }
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (vf_offsets_[v + 1] == 0) {
            throw MeshError("vertex " + std::to_string(v) + " is not referenced by any face");
        }
        vf_offsets_[v + 1] += vf_offsets_[v];
    }
    vf_faces_.assign(vf_offsets_.back(), 0);
    std::vector<int> fill(vf_offsets_.begin(), vf_offsets_.end() - 1);
    for (std::size_t f = 0; f < faces_.size(); ++f) {
        for (int v : faces_[f]) {
            vf_faces_[fill[v]++] = static_cast<int>(f);
        }
    }

    // Each vertex link must be a single cycle. Walk the fan through the
    // opposite half-edges and compare with the vertex degree.
    auto face_of = [&](int from, int to) {
        const auto lo = static_cast<std::uint64_t>(std::min(from, to));
        const auto hi = static_cast<std::uint64_t>(std::max(from, to));
        const std::uint64_t key = lo * static_cast<std::uint64_t>(nv) + hi;
        auto it = std::lower_bound(halfedges.begin(), halfedges.end(), key,
                                   [](const HalfEdge& h, std::uint64_t k) { return h.key < k; });
        for (; it != halfedges.end() && it->key == key; ++it) {
            if (it->from == from) {
                return it->face;
            }
        }
        return -1;
    };
    for (int v = 0; v < nv; ++v) {
        const auto fan = vertex_faces(v);
        const int start = fan[0];
        int f = start;
        std::size_t steps = 0;
        do {
            const Face& face = faces_[f];
            const int c = face[0] == v ? 0 : (face[1] == v ? 1 : 2);
            const int prev = face[(c + 2) % 3];
            f = face_of(v, prev);
            ++steps;
        } while (f != start && f >= 0 && steps <= fan.size());
        if (steps != fan.size()) {
            throw MeshError("non-manifold vertex " + std::to_string(v) + ": its faces form more than one fan");
        }
    }

    DisjointSets sets(vertices_.size());
    for (const MeshEdge& e : edges_) {
        sets.unite(e.v0, e.v1);
    }
    components_ = 0;
    for (int v = 0; v < nv; ++v) {
        components_ += sets.find(v) == v ? 1 : 0;
    }
}

TopologySummary topology(const TriangleMesh& mesh)
{
    TopologySummary summary;
    summary.euler_characteristic = static_cast<int>(mesh.num_vertices()) - static_cast<int>(mesh.num_edges()) +
                                   static_cast<int>(mesh.num_faces());
    summary.components = mesh.num_components();
    // Consistent orientation is enforced on construction.
    summary.orientable = true;
    summary.genus = (2 * summary.components - summary.euler_characteristic) / 2;
    return summary;
}

double total_area(const TriangleMesh& mesh)
{
    double area = 0.0;
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        area += mesh.face_area(f);
    }
    return area;
}

TriangleMesh scale_mesh(const TriangleMesh& mesh, double lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("scale factor must be positive and finite");
    }
    std::vector<Vec3> vertices = mesh.vertices();
    for (auto& v : vertices) {
        v *= lambda;
    }
    if (mesh.periodic()) {
        return TriangleMesh(std::move(vertices), mesh.faces(), lambda * mesh.period(), mesh.lifts());
    }
    return TriangleMesh(std::move(vertices), mesh.faces());
}

TriangleMesh revolve(const ProfileCurve& profile, int n_theta, Closure closure)
{
    validate_profile(profile);
    if (n_theta < 3) {
        throw DomainError("revolve needs n_theta >= 3");
    }
    const auto& samples = profile.samples;
    const auto n = static_cast<int>(samples.size());

    std::vector<double> cos_t(n_theta);
    std::vector<double> sin_t(n_theta);
    for (int j = 0; j < n_theta; ++j) {
        const double theta = 2.0 * M_PI * j / n_theta;
        cos_t[j] = std::cos(theta);
        sin_t[j] = std::sin(theta);
    }
    auto ring_point = [&](const ProfileSample& p, int j) { return Vec3(p.t * cos_t[j], p.t * sin_t[j], p.g); };

    for (int i = 1; i < n; ++i) {
        const double dt = samples[i].t - samples[i - 1].t;
        const double dg = samples[i].g - samples[i - 1].g;
        if (std::hypot(dt, dg) <= 1e-14 * (1.0 + std::abs(samples[i].t) + std::abs(samples[i].g))) {
            throw DomainError("profile samples " + std::to_string(i - 1) + " and " + std::to_string(i) +
                              " coincide; the revolved ring would be degenerate");
        }
    }

    std::vector<Vec3> vertices;
    std::vector<Face> faces;

    if (closure == Closure::capped) {
        if (n < 3) {
            throw DomainError("capped revolve needs at least three profile samples");
        }
        const double tol = 1e-12 * (1.0 + profile.arc_length());
        if (std::abs(samples.front().t) > tol || std::abs(samples.back().t) > tol) {
            throw DomainError("capped revolve needs both profile endpoints on the axis (t = 0)");
        }
        for (int i = 1; i + 1 < n; ++i) {
            if (!(samples[i].t > tol)) {
                throw DomainError("interior profile sample " + std::to_string(i) + " touches the axis");
            }
        }
        const int rings = n - 2;
        vertices.emplace_back(0.0, 0.0, samples.front().g);
        for (int i = 1; i + 1 < n; ++i) {
            for (int j = 0; j < n_theta; ++j) {
                vertices.push_back(ring_point(samples[i], j));
            }
        }
        vertices.emplace_back(0.0, 0.0, samples.back().g);
        const int south = 0;
        const int north = static_cast<int>(vertices.size()) - 1;
        auto id = [&](int ring, int j) { return 1 + ring * n_theta + (j % n_theta); };

        for (int j = 0; j < n_theta; ++j) {
            faces.push_back({south, id(0, j + 1), id(0, j)});
        }
        for (int r = 0; r + 1 < rings; ++r) {
            const bool mirrored = 2 * (r + 1) >= n - 1;
            for (int j = 0; j < n_theta; ++j) {
                const int a = id(r, j), b = id(r, j + 1), c = id(r + 1, j + 1), d = id(r + 1, j);
                if (!mirrored) {
                    faces.push_back({a, b, c});
                    faces.push_back({a, c, d});
                } else {
                    faces.push_back({a, b, d});
                    faces.push_back({b, c, d});
                }
            }
        }
        for (int j = 0; j < n_theta; ++j) {
            faces.push_back({north, id(rings - 1, j), id(rings - 1, j + 1)});
        }

        // Orient outwards: the enclosed volume must be positive.
        double volume = 0.0;
        for (const Face& f : faces) {
            volume += vertices[f[0]].dot(vertices[f[1]].cross(vertices[f[2]]));
        }
        if (volume < 0.0) {
            for (Face& f : faces) {
                std::swap(f[1], f[2]);
            }
        }
        return TriangleMesh(std::move(vertices), std::move(faces));
    }

    // periodic
    const int rings = n - 1;
    if (rings < 3) {
        throw DomainError("periodic revolve needs at least three distinct profile rings");
    }
    const double tol = 1e-9 * (1.0 + profile.arc_length());
    if (std::abs(samples.back().t - samples.front().t) > tol) {
        throw DomainError("periodic revolve needs matching radii at the profile endpoints");
    }
    for (int i = 0; i < n; ++i) {
        if (!(samples[i].t > tol)) {
            throw DomainError("periodic revolve: profile sample " + std::to_string(i) + " touches the axis");
        }
    }
    const double shift = samples.back().g - samples.front().g;
    const bool translated = std::abs(shift) > tol;

    for (int i = 0; i < rings; ++i) {
        for (int j = 0; j < n_theta; ++j) {
            vertices.push_back(ring_point(samples[i], j));
        }
    }
    std::vector<std::array<int, 3>> lifts;
    auto id = [&](int ring, int j) { return (ring % rings) * n_theta + (j % n_theta); };
    for (int r = 0; r < rings; ++r) {
        const bool mirrored = 2 * r >= rings;
        const int wrap = r + 1 == rings ? 1 : 0;
        for (int j = 0; j < n_theta; ++j) {
            const int a = id(r, j), b = id(r, j + 1), c = id(r + 1, j + 1), d = id(r + 1, j);
            if (!mirrored) {
                faces.push_back({a, b, c});
                lifts.push_back({0, 0, wrap});
                faces.push_back({a, c, d});
                lifts.push_back({0, wrap, wrap});
            } else {
                faces.push_back({a, b, d});
                lifts.push_back({0, 0, wrap});
                faces.push_back({b, c, d});
                lifts.push_back({0, wrap, wrap});
            }
        }
    }
    if (!translated) {
        return TriangleMesh(std::move(vertices), std::move(faces));
    }
    return TriangleMesh(std::move(vertices), std::move(faces), Vec3(0.0, 0.0, shift), std::move(lifts));
}

} // namespace skewgap
