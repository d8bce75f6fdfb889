#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <string>
#include <vector>

namespace skewgap {

/// Generalized symmetric eigenproblem A u = lambda M u with a lumped (diagonal,
/// positive) mass matrix M.
struct GeneralizedSystem {
    Eigen::SparseMatrix<double> stiffness;
    Eigen::VectorXd mass;
    /// A value no eigenvalue lies below (for -Laplace - V this is -max V).
    double lower_bound = 0.0;
    /// Grid index of each unknown; empty means the identity. Unknowns removed by
    /// Dirichlet conditions are absent and read as zero.
    std::vector<int> dofs;
    int grid_size = 0;
    std::vector<std::string> warnings;

    Eigen::Index size() const { return mass.size(); }
};

struct EigenSettings {
    /// Bound on ||M^{-1/2} (A - lambda M) u|| / ||M^{1/2} u|| relative to max(1, |lambda|).
    double tol = 1e-9;
    int max_iterations = 2000;
    /// Subspace dimension; 0 picks count + max(count, 10).
    int block = 0;
    /// Problems up to this size are solved densely.
    int dense_limit = 400;
};

struct Eigenpairs {
    Eigen::VectorXd values;
    /// M-orthonormal columns in the unknown numbering of the system.
    Eigen::MatrixXd vectors;
    Eigen::VectorXd residuals;
    int iterations = 0;
};

/// The `count` algebraically smallest eigenpairs.
///
/// Shift-and-invert subspace iteration with Rayleigh-Ritz: the shift
/// lower_bound - 1 puts the wanted end of the spectrum at the top of the inverted
/// operator, and A - shift * M is factorised once (sparse LDL^T). Start vectors
/// are deterministic: the constant vector followed by a fixed pseudo-random
/// sequence. Throws ConvergenceError carrying the best residuals.
Eigenpairs solve_lowest(const GeneralizedSystem& system, int count, const EigenSettings& settings = {});

/// Lower bound from Gershgorin discs of M^{-1/2} A M^{-1/2}.
double gershgorin_lower_bound(const Eigen::SparseMatrix<double>& stiffness, const Eigen::VectorXd& mass);

} // namespace skewgap
