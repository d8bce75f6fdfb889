#pragma once

#include "skewgap/mesh.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <optional>
#include <vector>

namespace skewgap {

/// Per-vertex discrete curvatures.
///
/// `S_sq` is the squared skew curvature (k1 - k2)^2 = 4 (H^2 - K), clamped at zero.
/// The geometric potential entering the Hamiltonian is V = H^2 - K = S_sq / 4.
struct CurvatureField {
    Eigen::VectorXd K;
    Eigen::VectorXd H;
    Eigen::VectorXd S_sq;
    /// Mixed Voronoi area of each vertex; sums to the total area.
    Eigen::VectorXd weight;
    /// Vertices whose mixed area is too small for a pointwise estimate.
    std::vector<int> flagged;
    /// Number of vertices where the raw H^2 - K was negative and got clamped.
    std::size_t clamped = 0;

    Eigen::VectorXd potential() const { return 0.25 * S_sq; }
};

CurvatureField discrete_curvatures(const TriangleMesh& mesh);

/// 2 pi minus the sum of corner angles around each vertex.
Eigen::VectorXd angle_defects(const TriangleMesh& mesh);

/// Sum over vertices of H^2 times the mixed area.
double willmore_energy(const TriangleMesh& mesh, const CurvatureField& field);

/// |sum of angle defects - 2 pi chi|.
double gauss_bonnet_residual(const TriangleMesh& mesh);

struct GeometricSummary {
    double area = 0.0;
    double willmore = 0.0;
    /// Area-weighted mean of S^2.
    double mean_S_sq = 0.0;
    double max_S_sq = 0.0;
    int euler_characteristic = 0;
    std::optional<int> genus;
    double gauss_bonnet_residual = 0.0;

    double mean_potential() const { return 0.25 * mean_S_sq; }
    double max_potential() const { return 0.25 * max_S_sq; }
    /// max V - mean V; zero exactly for constant skew curvature.
    double potential_spread() const { return 0.25 * (max_S_sq - mean_S_sq); }
};

GeometricSummary geometric_summary(const TriangleMesh& mesh);
GeometricSummary geometric_summary(const TriangleMesh& mesh, const CurvatureField& field);

/// Principal curvatures of a surface of revolution and derived quantities.
struct SorCurvatures {
    double kappa_meridian = 0.0;
    double kappa_parallel = 0.0;
    double H = 0.0;
    double K = 0.0;
    double S_sq = 0.0;

    double potential() const { return 0.25 * S_sq; }
};

/// Curvatures of the graph profile z = g(t) at radius t, given h = g'(t) and h'.
/// Throws DomainError on the axis (t <= 0).
SorCurvatures analytic_sor_curvatures(double t, double h, double h_prime);

/// Curvatures of a parametrised profile (x(u), z(u)) with x the radius, given the
/// first and second derivatives in u. Agrees with the graph form for x = t, z = g(t).
SorCurvatures parametric_sor_curvatures(double x, double dx, double ddx, double dz, double ddz);

/// CSV `vertex_id,K,H,S_sq,weight`.
void write_curvature_csv(std::ostream& out, const CurvatureField& field);

} // namespace skewgap
