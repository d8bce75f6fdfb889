#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace skewgap {

using Vec3 = Eigen::Vector3d;
using Face = std::array<int, 3>;

struct ProfileCurve;

/// Undirected edge. `v0 -> v1` is the direction in which `face0` traverses it;
/// `face1` traverses it as `v1 -> v0`.
struct MeshEdge {
    int v0 = 0;
    int v1 = 0;
    int face0 = -1;
    int face1 = -1;
};

/// Closed, consistently oriented triangle mesh.
///
/// The mesh is validated on construction and immutable afterwards. A mesh may be
/// periodic: it then lives in R^3 / Z where the generator is translation by
/// `period()`, and every face corner carries an integer lift so that the corner
/// position is `vertex + lift * period`. The quotient tori of the constant skew
/// curvature family are stored this way.
class TriangleMesh {
public:
    TriangleMesh(std::vector<Vec3> vertices, std::vector<Face> faces);
    TriangleMesh(std::vector<Vec3> vertices,
                 std::vector<Face> faces,
                 const Vec3& period,
                 std::vector<std::array<int, 3>> lifts);

    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_faces() const noexcept { return faces_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    const std::vector<Vec3>& vertices() const noexcept { return vertices_; }
    const std::vector<Face>& faces() const noexcept { return faces_; }
    const std::vector<MeshEdge>& edges() const noexcept { return edges_; }

    bool periodic() const noexcept { return period_.has_value(); }
    /// Translation generating the quotient; zero for ordinary meshes.
    Vec3 period() const noexcept { return period_.value_or(Vec3::Zero()); }
    const std::vector<std::array<int, 3>>& lifts() const noexcept { return lifts_; }

    /// Corner positions of face `f` with periodic lifts applied.
    std::array<Vec3, 3> corners(std::size_t f) const;

    /// Half the cross product of the two edges leaving corner 0; its norm is the area.
    Vec3 face_vector_area(std::size_t f) const;
    double face_area(std::size_t f) const { return face_vector_area(f).norm(); }

    /// Faces incident to vertex `v`.
    std::span<const int> vertex_faces(std::size_t v) const;

    /// Number of connected components.
    int num_components() const noexcept { return components_; }

    /// Length of the bounding-box diagonal (lifts ignored).
    double bounding_diagonal() const;

private:
    void validate_and_build();

    std::vector<Vec3> vertices_;
    std::vector<Face> faces_;
    std::optional<Vec3> period_;
    std::vector<std::array<int, 3>> lifts_;

    std::vector<MeshEdge> edges_;
    std::vector<int> vf_offsets_;
    std::vector<int> vf_faces_;
    int components_ = 0;
};

struct TopologySummary {
    int euler_characteristic = 0;
    /// Present for orientable closed meshes; summed over components.
    std::optional<int> genus;
    bool orientable = true;
    int components = 1;
};

TopologySummary topology(const TriangleMesh& mesh);

double total_area(const TriangleMesh& mesh);

/// Multiplies every vertex (and the period) by `lambda`; combinatorics unchanged.
TriangleMesh scale_mesh(const TriangleMesh& mesh, double lambda);

enum class Closure {
    /// Both profile endpoints lie on the axis and become poles.
    capped,
    /// First and last profile samples are identified; the result is a torus.
    periodic,
};

/// Revolves a profile (t = radius, g = height) about the z axis.
///
/// Periodic closure expects the last sample to be the first one translated
/// vertically by one period (possibly zero, for closed profile loops). Each band
/// between consecutive rings is split into two triangles per angular step; the
/// diagonal direction is mirrored about the profile midpoint so that the
/// triangulation is invariant under the reflection s -> -s of the profile.
TriangleMesh revolve(const ProfileCurve& profile, int n_theta, Closure closure);

} // namespace skewgap
