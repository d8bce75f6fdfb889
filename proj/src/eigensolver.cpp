#include "skewgap/eigensolver.hpp"

#include "skewgap/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace skewgap {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;

void check_system(const GeneralizedSystem& system, int count)
{
    const Eigen::Index n = system.size();
    if (system.stiffness.rows() != n || system.stiffness.cols() != n) {
        throw DomainError("stiffness and mass sizes differ");
    }
    if (n == 0) {
        throw DomainError("empty eigensystem");
    }
    if (count < 1 || count > n) {
        std::ostringstream os;
        os << "requested " << count << " eigenpairs from a system of size " << n;
        throw DomainError(os.str());
    }
    if (!(system.mass.minCoeff() > 0.0)) {
        throw DomainError("mass matrix must be positive");
    }
    if (!std::isfinite(system.lower_bound)) {
        throw DomainError("eigensystem lower bound must be finite");
    }
}

// Columns are flipped so the mass-weighted mean is non-negative, with the
// largest entry deciding when the mean vanishes.
void fix_signs(Eigen::MatrixXd& vectors, const Eigen::VectorXd& mass)
{
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        auto col = vectors.col(j);
        const double mean = mass.dot(col);
        double sign = 1.0;
        if (std::abs(mean) > 1e-8 * std::sqrt(mass.sum())) {
            sign = mean < 0.0 ? -1.0 : 1.0;
        } else {
            Eigen::Index idx = 0;
            col.cwiseAbs().maxCoeff(&idx);
            sign = col[idx] < 0.0 ? -1.0 : 1.0;
        }
        col *= sign;
    }
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& x)
{
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
    return qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), x.cols());
}

Eigenpairs finish(const GeneralizedSystem& system, const Eigen::VectorXd& theta, const Eigen::MatrixXd& x,
                  const Eigen::VectorXd& inv_sqrt_mass, int count, int iterations)
{
    Eigenpairs out;
    out.iterations = iterations;
    out.values = theta.head(count);
    out.vectors = inv_sqrt_mass.asDiagonal() * x.leftCols(count);
    fix_signs(out.vectors, system.mass);
    out.residuals.resize(count);
    for (int j = 0; j < count; ++j) {
        const Eigen::VectorXd u = out.vectors.col(j);
        const Eigen::VectorXd r = system.stiffness * u - out.values[j] * system.mass.cwiseProduct(u);
        const double num = inv_sqrt_mass.cwiseProduct(r).norm();
        const double den = system.mass.cwiseSqrt().cwiseProduct(u).norm();
        out.residuals[j] = num / den;
    }
    return out;
}

Eigenpairs solve_dense(const GeneralizedSystem& system, int count, const Eigen::VectorXd& inv_sqrt_mass)
{
    const Eigen::MatrixXd a = Eigen::MatrixXd(system.stiffness);
    Eigen::MatrixXd c = inv_sqrt_mass.asDiagonal() * a * inv_sqrt_mass.asDiagonal();
    c = 0.5 * (c + c.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
    if (eig.info() != Eigen::Success) {
        throw ConvergenceError("dense symmetric eigensolver failed", {});
    }
    return finish(system, eig.eigenvalues(), eig.eigenvectors(), inv_sqrt_mass, count, 1);
}

} // namespace

double gershgorin_lower_bound(const SparseMatrix& stiffness, const Eigen::VectorXd& mass)
{
    const Eigen::VectorXd inv_sqrt = mass.cwiseSqrt().cwiseInverse();
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(mass.size());
    Eigen::VectorXd radius = Eigen::VectorXd::Zero(mass.size());
    for (Eigen::Index k = 0; k < stiffness.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(stiffness, k); it; ++it) {
            const double v = it.value() * inv_sqrt[it.row()] * inv_sqrt[it.col()];
            if (it.row() == it.col()) {
                diag[it.row()] += v;
            } else {
                radius[it.row()] += std::abs(v);
            }
        }
    }
    return (diag - radius).minCoeff();
}

Eigenpairs solve_lowest(const GeneralizedSystem& system, int count, const EigenSettings& settings)
{
    check_system(system, count);
    const Eigen::Index n = system.size();
    const Eigen::VectorXd sqrt_mass = system.mass.cwiseSqrt();
    const Eigen::VectorXd inv_sqrt_mass = sqrt_mass.cwiseInverse();

    if (n <= settings.dense_limit) {
        return solve_dense(system, count, inv_sqrt_mass);
    }

    const int block = static_cast<int>(
        std::min<Eigen::Index>(n, settings.block > 0 ? settings.block : count + std::max(count, 10)));
    if (block < count) {
        throw DomainError("eigensolver block must be at least the requested count");
    }

    // A - shift M is positive definite because lower_bound is a true lower bound.
    const double shift = system.lower_bound - 1.0;
    SparseMatrix shifted = system.stiffness;
    for (Eigen::Index i = 0; i < n; ++i) {
        shifted.coeffRef(i, i) -= shift * system.mass[i];
    }
    shifted.makeCompressed();
    Eigen::SimplicialLDLT<SparseMatrix> factor(shifted);
    if (factor.info() != Eigen::Success) {
        throw ConvergenceError("factorisation of the shifted operator failed", {});
    }
    if (factor.vectorD().minCoeff() <= 0.0) {
        throw DomainError("shifted operator is not positive definite; the lower bound is wrong");
    }

    // Standard form C = M^{-1/2} A M^{-1/2}; its shifted inverse maps y to
    // M^{1/2} (A - shift M)^{-1} M^{1/2} y.
    auto apply_c = [&](const Eigen::MatrixXd& y) -> Eigen::MatrixXd {
        return inv_sqrt_mass.asDiagonal() * (system.stiffness * (inv_sqrt_mass.asDiagonal() * y));
    };
    auto apply_inverse = [&](const Eigen::MatrixXd& y) -> Eigen::MatrixXd {
        const Eigen::MatrixXd rhs = sqrt_mass.asDiagonal() * y;
        return sqrt_mass.asDiagonal() * factor.solve(rhs);
    };

    Eigen::MatrixXd x(n, block);
    x.col(0) = sqrt_mass;
    std::mt19937_64 rng(0x5eed5eedULL);
    for (int j = 1; j < block; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            x(i, j) = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
        }
    }
    x = orthonormalize(x);

    Eigen::VectorXd theta;
    Eigen::VectorXd best = Eigen::VectorXd::Constant(count, std::numeric_limits<double>::infinity());
    for (int it = 1; it <= settings.max_iterations; ++it) {
        const Eigen::MatrixXd y = orthonormalize(apply_inverse(x));
        const Eigen::MatrixXd cy = apply_c(y);
        Eigen::MatrixXd h = y.transpose() * cy;
        h = 0.5 * (h + h.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(h);
        theta = ritz.eigenvalues();
        x = y * ritz.eigenvectors();
        const Eigen::MatrixXd r = cy * ritz.eigenvectors() - x * theta.asDiagonal();

        bool converged = true;
        for (int j = 0; j < count; ++j) {
            const double res = r.col(j).norm();
            best[j] = std::min(best[j], res);
            if (res > settings.tol * std::max(1.0, std::abs(theta[j]))) {
                converged = false;
            }
        }
        if (converged) {
            return finish(system, theta, x, inv_sqrt_mass, count, it);
        }
    }
    std::ostringstream os;
    os << "eigensolver did not converge within " << settings.max_iterations << " iterations (worst residual "
       << best.maxCoeff() << ", tolerance " << settings.tol << ")";
    throw ConvergenceError(os.str(), std::vector<double>(best.data(), best.data() + best.size()));
}

} // namespace skewgap
