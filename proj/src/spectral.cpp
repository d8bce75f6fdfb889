#include "skewgap/spectral.hpp"

#include "skewgap/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace skewgap {

namespace {

using Triplet = Eigen::Triplet<double>;

// Three-point Gauss-Legendre rule on [0, 1].
constexpr std::array<double, 3> kGaussNodes = {0.11270166537925831, 0.5, 0.88729833462074169};
constexpr std::array<double, 3> kGaussWeights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

double element_length(const SorOperator& op, Eigen::Index e)
{
    const Eigen::Index n = op.size();
    if (e + 1 < n) {
        return op.s[e + 1] - op.s[e];
    }
    return op.s[0] + op.period - op.s[n - 1];
}

Eigen::Index element_count(const SorOperator& op)
{
    return op.boundary == SorBoundary::periodic ? op.size() : op.size() - 1;
}

Eigen::VectorXd sor_mass(const SorOperator& op)
{
    const Eigen::Index n = op.size();
    Eigen::VectorXd mass = Eigen::VectorXd::Zero(n);
    for (Eigen::Index e = 0; e < element_count(op); ++e) {
        const Eigen::Index a = e;
        const Eigen::Index b = (e + 1) % n;
        const double h = element_length(op, e);
        mass[a] += h * (2.0 * op.radius[a] + op.radius[b]) / 6.0;
        mass[b] += h * (op.radius[a] + 2.0 * op.radius[b]) / 6.0;
    }
    return mass;
}

SpectralResult make_result(const GeneralizedSystem& system, const Eigenpairs& pairs)
{
    SpectralResult out;
    out.eigenvalues.assign(pairs.values.data(), pairs.values.data() + pairs.values.size());
    out.residuals.assign(pairs.residuals.data(), pairs.residuals.data() + pairs.residuals.size());
    out.labels.assign(out.eigenvalues.size(), SpectralLabel{});
    out.mass = system.mass;
    out.vectors = pairs.vectors;
    out.warnings = system.warnings;
    return out;
}

double max_potential(const SorOperator& op)
{
    return op.potential.size() > 0 ? op.potential.maxCoeff() : 0.0;
}

} // namespace

void SorOperator::validate() const
{
    const Eigen::Index n = size();
    if (radius.size() != n || potential.size() != n) {
        throw DomainError("SOR operator arrays differ in length");
    }
    if (n < 3) {
        throw DomainError("SOR operator needs at least three nodes");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::isfinite(s[i]) || !std::isfinite(radius[i]) || !std::isfinite(potential[i])) {
            throw DomainError("SOR operator contains non-finite values");
        }
        if (i > 0 && !(s[i] > s[i - 1])) {
            throw DomainError("SOR grid must be strictly increasing");
        }
    }
    if (boundary == SorBoundary::periodic) {
        if (!(s[0] + period > s[n - 1])) {
            throw DomainError("SOR period must exceed the grid extent");
        }
        if (!(radius.minCoeff() > 0.0)) {
            throw DomainError("periodic SOR profile must stay off the axis (r > 0)");
        }
    } else {
        for (Eigen::Index i = 1; i + 1 < n; ++i) {
            if (!(radius[i] > 0.0)) {
                throw DomainError("interior SOR node touches the axis");
            }
        }
        if (radius[0] != 0.0 || radius[n - 1] != 0.0) {
            throw DomainError("pole boundary needs r = 0 at both ends");
        }
    }
}

SorOperator sor_operator(const RevolutionSurface& surface)
{
    const auto& samples = surface.profile.samples;
    if (samples.size() != surface.potential.size()) {
        throw DomainError("profile and potential lengths differ");
    }
    SorOperator op;
    Eigen::Index n = static_cast<Eigen::Index>(samples.size());
    if (surface.closure == Closure::periodic) {
        op.boundary = SorBoundary::periodic;
        --n;
        op.period = samples.back().s - samples.front().s;
    } else {
        op.boundary = SorBoundary::poles;
    }
    op.s.resize(n);
    op.radius.resize(n);
    op.potential.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& p = samples[static_cast<std::size_t>(i)];
        op.s[i] = p.s;
        op.radius[i] = p.t;
        op.potential[i] = surface.potential[static_cast<std::size_t>(i)];
    }
    if (op.boundary == SorBoundary::poles) {
        op.radius[0] = 0.0;
        op.radius[n - 1] = 0.0;
    }
    op.validate();
    return op;
}

GeometricSummary sor_summary(const SorOperator& op)
{
    op.validate();
    const Eigen::VectorXd mass = sor_mass(op);
    GeometricSummary summary;
    summary.area = 2.0 * M_PI * mass.sum();
    const double potential_integral = 2.0 * M_PI * op.potential.dot(mass);
    summary.mean_S_sq = 4.0 * potential_integral / summary.area;
    summary.max_S_sq = 4.0 * max_potential(op);
    summary.euler_characteristic = op.boundary == SorBoundary::periodic ? 0 : 2;
    summary.genus = op.boundary == SorBoundary::periodic ? 1 : 0;
    summary.willmore = potential_integral + 2.0 * M_PI * summary.euler_characteristic;
    return summary;
}

GeneralizedSystem assemble_sor_mode(const SorOperator& op, int m)
{
    op.validate();
    if (m < 0) {
        throw DomainError("Fourier mode must be non-negative");
    }
    const Eigen::Index n = op.size();
    const Eigen::VectorXd mass = sor_mass(op);
    const double m2 = static_cast<double>(m) * m;

    // Grid index -> unknown index; axis nodes are dropped for m >= 1.
    std::vector<int> unknown(static_cast<std::size_t>(n), -1);
    GeneralizedSystem system;
    for (Eigen::Index i = 0; i < n; ++i) {
        const bool on_axis = op.boundary == SorBoundary::poles && (i == 0 || i == n - 1);
        if (m > 0 && on_axis) {
            continue;
        }
        unknown[static_cast<std::size_t>(i)] = static_cast<int>(system.dofs.size());
        system.dofs.push_back(static_cast<int>(i));
    }
    const auto dim = static_cast<Eigen::Index>(system.dofs.size());
    system.grid_size = static_cast<int>(n);
    system.mass.resize(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        system.mass[k] = mass[system.dofs[static_cast<std::size_t>(k)]];
    }

    std::vector<Triplet> triplets;
    Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(n);
    for (Eigen::Index e = 0; e < element_count(op); ++e) {
        const Eigen::Index a = e;
        const Eigen::Index b = (e + 1) % n;
        const double h = element_length(op, e);
        const double ra = op.radius[a];
        const double rb = op.radius[b];
        const double stiff = 0.5 * (ra + rb) / h;
        const int ua = unknown[static_cast<std::size_t>(a)];
        const int ub = unknown[static_cast<std::size_t>(b)];
        diagonal[a] += stiff;
        diagonal[b] += stiff;
        if (ua >= 0 && ub >= 0) {
            triplets.emplace_back(ua, ub, -stiff);
            triplets.emplace_back(ub, ua, -stiff);
        }
        if (m > 0) {
            // Row-sum lumped centrifugal term m^2 * int phi_i / r.
            for (int q = 0; q < 3; ++q) {
                const double x = kGaussNodes[q];
                const double r = (1.0 - x) * ra + x * rb;
                if (ua >= 0) {
                    diagonal[a] += m2 * h * kGaussWeights[q] * (1.0 - x) / r;
                }
                if (ub >= 0) {
                    diagonal[b] += m2 * h * kGaussWeights[q] * x / r;
                }
            }
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const int u = unknown[static_cast<std::size_t>(i)];
        if (u >= 0) {
            triplets.emplace_back(u, u, diagonal[i] - op.potential[i] * mass[i]);
        }
    }
    system.stiffness.resize(dim, dim);
    system.stiffness.setFromTriplets(triplets.begin(), triplets.end());
    system.lower_bound = -max_potential(op);
    return system;
}

GeneralizedSystem assemble_fem(const TriangleMesh& mesh, const CurvatureField& field)
{
    const auto nv = static_cast<Eigen::Index>(mesh.num_vertices());
    if (field.weight.size() != nv || field.S_sq.size() != nv) {
        throw DomainError("curvature field does not match the mesh");
    }
    GeneralizedSystem system;
    system.grid_size = static_cast<int>(nv);
    std::vector<Triplet> triplets;
    triplets.reserve(9 * mesh.num_faces() + static_cast<std::size_t>(nv));
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const auto c = mesh.corners(f);
        const Face& face = mesh.faces()[f];
        for (int k = 0; k < 3; ++k) {
            // Corner k is opposite the edge (k+1, k+2).
            const Vec3 u = c[(k + 1) % 3] - c[k];
            const Vec3 v = c[(k + 2) % 3] - c[k];
            const double w = 0.5 * u.dot(v) / u.cross(v).norm();
            const int i = face[(k + 1) % 3];
            const int j = face[(k + 2) % 3];
            triplets.emplace_back(i, j, -w);
            triplets.emplace_back(j, i, -w);
            triplets.emplace_back(i, i, w);
            triplets.emplace_back(j, j, w);
        }
    }
    const Eigen::VectorXd potential = field.potential();
    for (Eigen::Index v = 0; v < nv; ++v) {
        triplets.emplace_back(static_cast<int>(v), static_cast<int>(v), -potential[v] * field.weight[v]);
    }
    system.stiffness.resize(nv, nv);
    system.stiffness.setFromTriplets(triplets.begin(), triplets.end());
    system.mass = field.weight;
    if (!field.flagged.empty()) {
        // Keep the mass positive so the problem stays well posed.
        const double floor = 1e-12 * field.weight.sum() / static_cast<double>(nv);
        for (int v : field.flagged) {
            system.mass[v] = std::max(system.mass[v], floor);
        }
        std::ostringstream os;
        os << field.flagged.size() << " vertices have degenerate area weights (first: " << field.flagged.front()
           << ")";
        system.warnings.push_back(os.str());
    }
    if (field.clamped > 0) {
        std::ostringstream os;
        os << field.clamped << " vertices had H^2 - K < 0 clamped to zero";
        system.warnings.push_back(os.str());
    }
    system.lower_bound = nv > 0 ? -potential.maxCoeff() : 0.0;
    return system;
}

std::vector<double> SpectralResult::energies(const PhysicalUnits& units) const
{
    std::vector<double> e;
    e.reserve(eigenvalues.size());
    for (double lambda : eigenvalues) {
        e.push_back(units.to_energy(lambda));
    }
    return e;
}

SpectralResult SpectralResult::sector(int parity) const
{
    SpectralResult out;
    out.mass = mass;
    out.mesh_size = mesh_size;
    out.warnings = warnings;
    std::vector<Eigen::Index> keep;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        if (labels[i].parity == parity) {
            keep.push_back(static_cast<Eigen::Index>(i));
            out.eigenvalues.push_back(eigenvalues[i]);
            out.labels.push_back(labels[i]);
            out.residuals.push_back(residuals[i]);
        }
    }
    out.vectors.resize(vectors.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) {
        out.vectors.col(static_cast<Eigen::Index>(j)) = vectors.col(keep[j]);
    }
    return out;
}

double SpectralResult::constant_similarity(std::size_t i) const
{
    const Eigen::VectorXd u = vectors.col(static_cast<Eigen::Index>(i));
    const double inner = mass.dot(u);
    const double norm_u = std::sqrt(u.cwiseAbs2().dot(mass));
    return std::abs(inner) / (norm_u * std::sqrt(mass.sum()));
}

SpectralResult lowest_eigenpairs(const GeneralizedSystem& system, int count, double tol)
{
    EigenSettings settings;
    settings.tol = tol;
    const Eigenpairs pairs = solve_lowest(system, count, settings);
    SpectralResult out = make_result(system, pairs);
    if (!system.dofs.empty()) {
        Eigen::MatrixXd full = Eigen::MatrixXd::Zero(system.grid_size, pairs.vectors.cols());
        for (std::size_t k = 0; k < system.dofs.size(); ++k) {
            full.row(system.dofs[k]) = pairs.vectors.row(static_cast<Eigen::Index>(k));
        }
        out.vectors = std::move(full);
    }
    return out;
}

int required_mode_count(const SorOperator& op, double lambda)
{
    const double reach = lambda + max_potential(op);
    if (!(reach > 0.0)) {
        return 0;
    }
    return static_cast<int>(std::floor(op.radius.maxCoeff() * std::sqrt(reach)));
}

SpectralResult solve_sor(const SorOperator& op, int m_max, int count, double tol)
{
    op.validate();
    if (m_max < 0 || count < 1) {
        throw DomainError("solve_sor needs m_max >= 0 and count >= 1");
    }
    struct Entry {
        double lambda;
        int mode;
        int copy;
        int column;
        const SpectralResult* source;
    };
    // Modes are classified one at a time, before the merged list is cut, so that
    // no degenerate pair is split. A one-dimensional problem has multiplicities of
    // at most two; two extra pairs per mode leave room to drop a trailing cluster
    // that may be incomplete.
    const std::vector<int> reflection = profile_reflection(op);
    std::vector<SpectralResult> per_mode;
    per_mode.reserve(static_cast<std::size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m) {
        const GeneralizedSystem system = assemble_sor_mode(op, m);
        const int wanted = static_cast<int>(std::min<Eigen::Index>(count + 2, system.size()));
        SpectralResult r = lowest_eigenpairs(system, wanted, tol);
        r.mass = sor_mass(op);
        if (!reflection.empty()) {
            if (wanted < system.size()) {
                const std::size_t keep = degenerate_groups(r.eigenvalues).back().front();
                r.eigenvalues.resize(keep);
                r.residuals.resize(keep);
                r.labels.resize(keep);
                r.vectors.conservativeResize(Eigen::NoChange, static_cast<Eigen::Index>(keep));
            }
            r = parity_classify(r, reflection);
        }
        per_mode.push_back(std::move(r));
    }
    std::vector<Entry> entries;
    for (int m = 0; m <= m_max; ++m) {
        const SpectralResult& r = per_mode[static_cast<std::size_t>(m)];
        for (std::size_t j = 0; j < r.size(); ++j) {
            for (int copy = 0; copy < (m == 0 ? 1 : 2); ++copy) {
                entries.push_back({r.eigenvalues[j], m, copy, static_cast<int>(j), &r});
            }
        }
    }
    if (static_cast<int>(entries.size()) < count) {
        throw DomainError("SOR grid too coarse for the requested number of eigenvalues");
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.lambda, a.mode, a.copy) < std::tie(b.lambda, b.mode, b.copy);
    });
    entries.resize(static_cast<std::size_t>(count));

    const double top = entries.back().lambda;
    const double rmax = op.radius.maxCoeff();
    const double omitted = (m_max + 1.0) * (m_max + 1.0) / (rmax * rmax) - max_potential(op);
    if (!(omitted > top)) {
        std::ostringstream os;
        os << "m_max = " << m_max << " is too small: mode " << m_max + 1 << " may contribute below lambda = " << top
           << "; use m_max >= " << required_mode_count(op, top);
        throw DomainError(os.str());
    }

    SpectralResult out;
    out.mass = sor_mass(op);
    out.vectors.resize(op.size(), count);
    for (int i = 0; i < count; ++i) {
        const Entry& e = entries[static_cast<std::size_t>(i)];
        out.eigenvalues.push_back(e.lambda);
        out.residuals.push_back(e.source->residuals[static_cast<std::size_t>(e.column)]);
        out.labels.push_back({e.mode, e.copy, e.source->labels[static_cast<std::size_t>(e.column)].parity});
        out.vectors.col(i) = e.source->vectors.col(e.column);
    }
    double h = 0.0;
    for (Eigen::Index e = 0; e < element_count(op); ++e) {
        h = std::max(h, element_length(op, e));
    }
    out.mesh_size = h;
    return out;
}

SpectralResult solve_sor(const SorOperator& op, int count, double tol)
{
    // The axisymmetric spectrum alone bounds the merged one from above.
    const GeneralizedSystem axisymmetric = assemble_sor_mode(op, 0);
    const int wanted = static_cast<int>(std::min<Eigen::Index>(count, axisymmetric.size()));
    const SpectralResult m0 = lowest_eigenpairs(axisymmetric, wanted, tol);
    double top = m0.eigenvalues.back();
    if (wanted < count) {
        top = std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(top)) {
        throw DomainError("SOR grid too coarse for the requested number of eigenvalues");
    }
    return solve_sor(op, required_mode_count(op, top), count, tol);
}

SpectralResult solve_fem(const TriangleMesh& mesh, int count, double tol)
{
    const CurvatureField field = discrete_curvatures(mesh);
    SpectralResult result = lowest_eigenpairs(assemble_fem(mesh, field), count, tol);
    result.mesh_size = max_edge_length(mesh);
    return result;
}

double max_edge_length(const TriangleMesh& mesh)
{
    double h = 0.0;
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const auto c = mesh.corners(f);
        for (int k = 0; k < 3; ++k) {
            h = std::max(h, (c[(k + 1) % 3] - c[k]).norm());
        }
    }
    return h;
}

std::vector<std::vector<std::size_t>> degenerate_groups(const std::vector<double>& eigenvalues, double rel_gap)
{
    std::vector<std::vector<std::size_t>> groups;
    if (eigenvalues.empty()) {
        return groups;
    }
    double scale = 0.0;
    for (double v : eigenvalues) {
        scale = std::max(scale, std::abs(v));
    }
    const double gap = rel_gap * std::max(scale, std::numeric_limits<double>::min());
    std::vector<std::size_t> order(eigenvalues.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return eigenvalues[a] < eigenvalues[b]; });
    groups.push_back({order[0]});
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (eigenvalues[order[k]] - eigenvalues[order[k - 1]] <= gap) {
            groups.back().push_back(order[k]);
        } else {
            groups.push_back({order[k]});
        }
    }
    return groups;
}

SpectralResult parity_classify(const SpectralResult& result, const std::vector<int>& reflection)
{
    const auto n = static_cast<Eigen::Index>(reflection.size());
    if (n != result.vectors.rows() || n != result.mass.size()) {
        throw DomainError("reflection does not match the eigenvector grid");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const int j = reflection[static_cast<std::size_t>(i)];
        if (j < 0 || j >= n || reflection[static_cast<std::size_t>(j)] != i) {
            throw DomainError("reflection is not an involution of the grid");
        }
        if (std::abs(result.mass[i] - result.mass[j]) > 1e-9 * std::abs(result.mass[i])) {
            throw DomainError("reflection does not preserve the mass; the operator is not symmetric");
        }
    }

    // Eigenspaces are clusters within one (mode, copy) label.
    std::map<std::pair<int, int>, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < result.size(); ++i) {
        by_label[{result.labels[i].mode, result.labels[i].copy}].push_back(i);
    }

    SpectralResult out = result;
    for (const auto& [label, members] : by_label) {
        std::vector<double> values;
        for (std::size_t i : members) {
            values.push_back(result.eigenvalues[i]);
        }
        for (const auto& group : degenerate_groups(values)) {
            const auto q = static_cast<Eigen::Index>(group.size());
            Eigen::MatrixXd x(n, q);
            for (Eigen::Index c = 0; c < q; ++c) {
                x.col(c) = result.vectors.col(static_cast<Eigen::Index>(members[group[static_cast<std::size_t>(c)]]));
            }
            Eigen::MatrixXd px(n, q);
            for (Eigen::Index i = 0; i < n; ++i) {
                px.row(i) = x.row(reflection[static_cast<std::size_t>(i)]);
            }
            Eigen::MatrixXd g = x.transpose() * result.mass.asDiagonal() * px;
            g = 0.5 * (g + g.transpose()).eval();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
            const Eigen::VectorXd mu = eig.eigenvalues();
            // Ascending order: -1 representatives first. Keep +1 first instead.
            const Eigen::MatrixXd rotated = x * eig.eigenvectors();
            for (Eigen::Index c = 0; c < q; ++c) {
                const Eigen::Index src = q - 1 - c;
                if (std::abs(std::abs(mu[src]) - 1.0) > 1e-3) {
                    std::ostringstream os;
                    os << "reflection does not commute with the operator (|<Pu, u>| = " << std::abs(mu[src])
                       << " near lambda = " << values[group[0]] << ")";
                    throw DomainError(os.str());
                }
                const std::size_t dst = members[group[static_cast<std::size_t>(c)]];
                Eigen::VectorXd u = rotated.col(src);
                const double mean = result.mass.dot(u);
                Eigen::Index idx = 0;
                u.cwiseAbs().maxCoeff(&idx);
                if (mean < -1e-8 * std::sqrt(result.mass.sum()) ||
                    (std::abs(mean) <= 1e-8 * std::sqrt(result.mass.sum()) && u[idx] < 0.0)) {
                    u = -u;
                }
                out.vectors.col(static_cast<Eigen::Index>(dst)) = u;
                out.labels[dst].parity = mu[src] > 0.0 ? 1 : -1;
            }
        }
    }
    return out;
}

std::vector<int> profile_reflection(const SorOperator& op, double tol)
{
    const Eigen::Index n = op.size();
    std::vector<int> map(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        map[static_cast<std::size_t>(i)] =
            static_cast<int>(op.boundary == SorBoundary::periodic ? (n - i) % n : n - 1 - i);
    }
    const double scale_s = op.boundary == SorBoundary::periodic ? op.period : op.s[n - 1] - op.s[0];
    const double scale_r = std::max(op.radius.maxCoeff(), 1e-300);
    const double scale_v = std::max(op.potential.cwiseAbs().maxCoeff(), 1.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int j = map[static_cast<std::size_t>(i)];
        if (std::abs(op.radius[i] - op.radius[j]) > tol * scale_r ||
            std::abs(op.potential[i] - op.potential[j]) > tol * scale_v) {
            return {};
        }
    }
    // Element e joins nodes e and e + 1; its mirror joins the images.
    for (Eigen::Index e = 0; e < element_count(op); ++e) {
        const Eigen::Index mirror =
            op.boundary == SorBoundary::periodic ? (2 * n - 1 - e) % n : n - 2 - e;
        if (std::abs(element_length(op, e) - element_length(op, mirror)) > tol * scale_s) {
            return {};
        }
    }
    return map;
}

std::vector<int> ring_reflection(int rings, int n_theta)
{
    if (rings < 1 || n_theta < 1) {
        throw DomainError("ring_reflection needs positive sizes");
    }
    std::vector<int> map(static_cast<std::size_t>(rings) * static_cast<std::size_t>(n_theta));
    for (int i = 0; i < rings; ++i) {
        for (int j = 0; j < n_theta; ++j) {
            map[static_cast<std::size_t>(i * n_theta + j)] = ((rings - i) % rings) * n_theta + j;
        }
    }
    return map;
}

} // namespace skewgap
