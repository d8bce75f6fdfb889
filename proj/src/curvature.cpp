#include "skewgap/curvature.hpp"

#include "skewgap/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <locale>
#include <ostream>
#include <sstream>

namespace skewgap {

namespace {

double corner_angle(const Vec3& u, const Vec3& v)
{
    return std::atan2(u.cross(v).norm(), u.dot(v));
}

double cotangent(const Vec3& u, const Vec3& v)
{
    return u.dot(v) / u.cross(v).norm();
}

} // namespace

Eigen::VectorXd angle_defects(const TriangleMesh& mesh)
{
    Eigen::VectorXd defect = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(mesh.num_vertices()), 2.0 * M_PI);
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const auto c = mesh.corners(f);
        const Face& face = mesh.faces()[f];
        for (int k = 0; k < 3; ++k) {
            const Vec3& p = c[k];
            defect[face[k]] -= corner_angle(c[(k + 1) % 3] - p, c[(k + 2) % 3] - p);
        }
    }
    return defect;
}

CurvatureField discrete_curvatures(const TriangleMesh& mesh)
{
    const auto nv = static_cast<Eigen::Index>(mesh.num_vertices());
    CurvatureField field;
    field.weight = Eigen::VectorXd::Zero(nv);
    Eigen::MatrixXd mean_vector = Eigen::MatrixXd::Zero(3, nv);
    Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(3, nv);

    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const auto c = mesh.corners(f);
        const Face& face = mesh.faces()[f];
        const Vec3 vector_area = 0.5 * (c[1] - c[0]).cross(c[2] - c[0]);
        const double area = vector_area.norm();

        std::array<double, 3> cot{};
        bool obtuse = false;
        int obtuse_corner = -1;
        for (int k = 0; k < 3; ++k) {
            const Vec3 u = c[(k + 1) % 3] - c[k];
            const Vec3 v = c[(k + 2) % 3] - c[k];
            cot[k] = cotangent(u, v);
            if (u.dot(v) < 0.0) {
                obtuse = true;
                obtuse_corner = k;
            }
        }
        for (int k = 0; k < 3; ++k) {
            const int i = face[k];
            const int a = (k + 1) % 3;
            const int b = (k + 2) % 3;
            double w = 0.0;
            if (!obtuse) {
                // Voronoi region: |P - Q|^2 cot(R) + |P - R|^2 cot(Q), over 8.
                w = ((c[k] - c[a]).squaredNorm() * cot[b] + (c[k] - c[b]).squaredNorm() * cot[a]) / 8.0;
            } else {
                w = obtuse_corner == k ? 0.5 * area : 0.25 * area;
            }
            field.weight[i] += w;
            normal.col(i) += vector_area;
            // Edge (k, a) is opposite corner b; edge (k, b) is opposite corner a.
            mean_vector.col(i) += 0.5 * cot[b] * (c[k] - c[a]) + 0.5 * cot[a] * (c[k] - c[b]);
        }
    }

    field.K = angle_defects(mesh);
    field.H.resize(nv);
    field.S_sq.resize(nv);
    const double area = field.weight.sum();
    const double min_weight = 1e-12 * area / static_cast<double>(nv);
    for (Eigen::Index v = 0; v < nv; ++v) {
        const double w = field.weight[v];
        if (!(w > min_weight)) {
            field.flagged.push_back(static_cast<int>(v));
            field.K[v] = 0.0;
            field.H[v] = 0.0;
            field.S_sq[v] = 0.0;
            continue;
        }
        field.K[v] /= w;
        const Eigen::Vector3d mv = mean_vector.col(v);
        const double sign = mv.dot(normal.col(v)) >= 0.0 ? 1.0 : -1.0;
        field.H[v] = sign * 0.5 * mv.norm() / w;
        const double raw = field.H[v] * field.H[v] - field.K[v];
        if (raw < 0.0) {
            ++field.clamped;
        }
        field.S_sq[v] = 4.0 * std::max(0.0, raw);
    }
    return field;
}

double willmore_energy(const TriangleMesh& mesh, const CurvatureField& field)
{
    if (static_cast<std::size_t>(field.H.size()) != mesh.num_vertices()) {
        throw DomainError("curvature field does not match the mesh");
    }
    return field.H.cwiseAbs2().dot(field.weight);
}

double gauss_bonnet_residual(const TriangleMesh& mesh)
{
    const int chi = topology(mesh).euler_characteristic;
    return std::abs(angle_defects(mesh).sum() - 2.0 * M_PI * chi);
}

GeometricSummary geometric_summary(const TriangleMesh& mesh, const CurvatureField& field)
{
    GeometricSummary summary;
    const TopologySummary topo = topology(mesh);
    summary.area = total_area(mesh);
    summary.willmore = willmore_energy(mesh, field);
    summary.mean_S_sq = field.S_sq.dot(field.weight) / summary.area;
    summary.max_S_sq = field.S_sq.size() > 0 ? field.S_sq.maxCoeff() : 0.0;
    summary.euler_characteristic = topo.euler_characteristic;
    summary.genus = topo.genus;
    summary.gauss_bonnet_residual = std::abs(angle_defects(mesh).sum() - 2.0 * M_PI * topo.euler_characteristic);
    return summary;
}

GeometricSummary geometric_summary(const TriangleMesh& mesh)
{
    return geometric_summary(mesh, discrete_curvatures(mesh));
}

namespace {

SorCurvatures from_principal(double kappa_meridian, double kappa_parallel)
{
    SorCurvatures c;
    c.kappa_meridian = kappa_meridian;
    c.kappa_parallel = kappa_parallel;
    c.H = 0.5 * (kappa_meridian + kappa_parallel);
    c.K = kappa_meridian * kappa_parallel;
    const double skew = kappa_meridian - kappa_parallel;
    c.S_sq = skew * skew;
    return c;
}

} // namespace

SorCurvatures analytic_sor_curvatures(double t, double h, double h_prime)
{
    if (!(t > 0.0)) {
        throw DomainError("surface-of-revolution curvatures are undefined on the axis (t <= 0)");
    }
    const double q = 1.0 + h * h;
    const double root = std::sqrt(q);
    return from_principal(h_prime / (q * root), h / (t * root));
}

SorCurvatures parametric_sor_curvatures(double x, double dx, double ddx, double dz, double ddz)
{
    if (!(x > 0.0)) {
        throw DomainError("surface-of-revolution curvatures are undefined on the axis (radius <= 0)");
    }
    const double speed = std::hypot(dx, dz);
    return from_principal((dx * ddz - dz * ddx) / (speed * speed * speed), dz / (x * speed));
}

void write_curvature_csv(std::ostream& out, const CurvatureField& field)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    os << "vertex_id,K,H,S_sq,weight\n";
    for (Eigen::Index v = 0; v < field.K.size(); ++v) {
        os << v << ',' << field.K[v] << ',' << field.H[v] << ',' << field.S_sq[v] << ',' << field.weight[v] << '\n';
    }
    out << os.str();
}

} // namespace skewgap
