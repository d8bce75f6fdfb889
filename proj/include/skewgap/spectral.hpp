#pragma once

#include "skewgap/curvature.hpp"
#include "skewgap/eigensolver.hpp"
#include "skewgap/mesh.hpp"
#include "skewgap/surfaces.hpp"
#include "skewgap/units.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace skewgap {

enum class SorBoundary {
    /// Closed profile loop; node N is identified with node 0.
    periodic,
    /// Both end nodes sit on the axis (r = 0); modes m >= 1 vanish there.
    poles,
};

/// Separated operator -(1/r)(r f')' + (m^2/r^2) f - V f along a profile,
/// parametrised by arc length.
struct SorOperator {
    Eigen::VectorXd s;
    Eigen::VectorXd radius;
    Eigen::VectorXd potential;
    SorBoundary boundary = SorBoundary::periodic;
    /// Arc length of one period (periodic boundary only).
    double period = 0.0;

    Eigen::Index size() const { return s.size(); }
    /// Throws DomainError when an invariant fails.
    void validate() const;
};

/// Periodic surfaces drop the closing sample; capped ones keep both poles.
SorOperator sor_operator(const RevolutionSurface& surface);

/// Area, mean and max potential of the revolved surface from the lumped mass.
/// The Willmore energy follows from W = int V dA + 2 pi chi, with chi = 0 for
/// periodic profiles and 2 between poles.
GeometricSummary sor_summary(const SorOperator& op);

/// Linear finite elements for Fourier mode m with a lumped mass. The potential
/// enters the diagonal as -V_i M_i. Axis nodes are removed for m >= 1.
GeneralizedSystem assemble_sor_mode(const SorOperator& op, int m);

/// Cotangent stiffness with lumped mixed-area mass; -V_v weight_v on the diagonal.
GeneralizedSystem assemble_fem(const TriangleMesh& mesh, const CurvatureField& field);

struct SpectralLabel {
    /// Fourier mode for SOR results, -1 otherwise.
    int mode = -1;
    /// 0 for the cosine copy of a mode, 1 for the sine copy.
    int copy = 0;
    /// +1 or -1 once classified, 0 when unknown.
    int parity = 0;
};

struct SpectralResult {
    std::vector<double> eigenvalues;
    /// Mass-orthonormal eigenvectors on the full grid (one column per eigenvalue).
    Eigen::MatrixXd vectors;
    /// Lumped mass defining the inner product of `vectors`.
    Eigen::VectorXd mass;
    std::vector<SpectralLabel> labels;
    std::vector<double> residuals;
    double mesh_size = 0.0;
    std::vector<std::string> warnings;

    std::size_t size() const noexcept { return eigenvalues.size(); }
    std::vector<double> energies(const PhysicalUnits& units) const;
    /// Entries with the given parity, in order.
    SpectralResult sector(int parity) const;
    /// |<u_i, 1>_M| / (|u_i|_M |1|_M).
    double constant_similarity(std::size_t i) const;
};

/// Residual tolerance used unless a caller asks otherwise.
inline constexpr double kDefaultSolverTol = 1e-9;

SpectralResult lowest_eigenpairs(const GeneralizedSystem& system, int count, double tol = kDefaultSolverTol);

/// Merges the lowest `count` eigenvalues of modes 0..m_max. Throws DomainError
/// naming the required m_max when m_max is too small to guarantee that no
/// omitted mode contributes below the largest reported eigenvalue.
/// Reflection-symmetric profiles get parity labels.
SpectralResult solve_sor(const SorOperator& op, int m_max, int count, double tol = kDefaultSolverTol);

/// Same, with m_max chosen from the completeness guard.
SpectralResult solve_sor(const SorOperator& op, int count, double tol = kDefaultSolverTol);

/// FEM spectrum of a mesh with its discrete curvature potential.
SpectralResult solve_fem(const TriangleMesh& mesh, int count, double tol = kDefaultSolverTol);

/// Longest edge, used as the FEM resolution indicator.
double max_edge_length(const TriangleMesh& mesh);

/// Smallest m_max whose omitted modes all lie above `lambda`.
int required_mode_count(const SorOperator& op, double lambda);

/// Rotates every (near-)degenerate eigenspace into reflection eigenvectors and
/// records their parity. `reflection[i]` is the image of grid point i. Throws
/// DomainError if the reflection is not an involution or does not map an
/// eigenspace to itself.
SpectralResult parity_classify(const SpectralResult& result, const std::vector<int>& reflection);

/// Reflection of a profile grid about node 0 when the profile is symmetric
/// (i -> N - i periodic, i -> N - 1 - i between poles); empty otherwise.
std::vector<int> profile_reflection(const SorOperator& op, double tol = 1e-9);

/// Vertex involution of a periodic revolved mesh with `rings` rings of
/// `n_theta` vertices, reflecting ring i to ring (rings - i) mod rings.
std::vector<int> ring_reflection(int rings, int n_theta);

/// Groups of indices whose eigenvalues agree within the relative gap `rel_gap`
/// (relative to the largest |eigenvalue| in the list).
std::vector<std::vector<std::size_t>> degenerate_groups(const std::vector<double>& eigenvalues,
                                                        double rel_gap = 1e-6);

} // namespace skewgap
