#include "helpers.hpp"

#include "skewgap/curvature.hpp"
#include "skewgap/error.hpp"
#include "skewgap/surfaces.hpp"

#include <doctest.h>

#include <sstream>

using namespace skewgap;

namespace {

// Willmore energy of the torus (R, r) by 2D quadrature of H^2 dA.
double torus_willmore_oracle(double R, double r)
{
    return testutil::simpson2d(
        [&](double, double v) {
            const double rho = R + r * std::cos(v);
            const double h = (R + 2.0 * r * std::cos(v)) / (2.0 * r * rho);
            return h * h * r * rho;
        },
        0.0, 2.0 * M_PI, 0.0, 2.0 * M_PI, 200);
}

} // namespace

TEST_SUITE("curvature")
{
    TEST_CASE("sphere meshes are umbilic in the limit")
    {
        const TriangleMesh mesh = icosphere(5);
        const CurvatureField field = discrete_curvatures(mesh);
        CHECK(field.weight.sum() == doctest::Approx(total_area(mesh)).epsilon(1e-12));
        CHECK(field.K.minCoeff() > 0.98);
        CHECK(field.K.maxCoeff() < 1.02);
        CHECK(field.H.minCoeff() > 0.99);
        CHECK(field.H.maxCoeff() < 1.01);
        CHECK(field.S_sq.maxCoeff() < 0.05);
        CHECK(field.S_sq.minCoeff() >= 0.0);
    }

    TEST_CASE("torus outer equator curvature")
    {
        const double R = 2.0, r = 1.0;
        // Vertex 0 of the revolved torus sits on the outer equator (v = 0).
        const TriangleMesh mesh = torus(R, r, 256, 128);
        const CurvatureField field = discrete_curvatures(mesh);
        CHECK(mesh.vertices()[0].x() == doctest::Approx(R + r));
        CHECK(field.K[0] == doctest::Approx(1.0 / 3.0).epsilon(5e-3));
        CHECK(std::abs(field.H[0]) == doctest::Approx(2.0 / 3.0).epsilon(5e-3));
        const SorCurvatures exact = parametric_sor_curvatures(R + r, 0.0, -r, r, 0.0);
        CHECK(exact.K == doctest::Approx(1.0 / 3.0));
        CHECK(exact.H == doctest::Approx(2.0 / 3.0));
    }

    TEST_CASE("discrete curvature matches the analytic surface of revolution")
    {
        const double R = 2.5, r = 1.0;
        const int n = 96;
        const TriangleMesh mesh = torus(R, r, 2 * n, n);
        const CurvatureField field = discrete_curvatures(mesh);
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            const double v = 2.0 * M_PI * i / n;
            const SorCurvatures c = parametric_sor_curvatures(R + r * std::cos(v), -r * std::sin(v), -r * std::cos(v),
                                                              r * std::cos(v), -r * std::sin(v));
            const int vertex = i * 2 * n;
            worst = std::max(worst, std::abs(field.K[vertex] - c.K));
            worst = std::max(worst, std::abs(std::abs(field.H[vertex]) - std::abs(c.H)));
        }
        CHECK(worst < 5e-3);
    }

    TEST_CASE("flat patch of a large sphere has small defects")
    {
        const Eigen::VectorXd defects = angle_defects(icosphere(1, 1000.0));
        CHECK(defects.sum() == doctest::Approx(4.0 * M_PI));
        const TriangleMesh fine = icosphere(4, 1000.0);
        CHECK(angle_defects(fine).cwiseAbs().maxCoeff() < 0.01);
    }

    TEST_CASE("gauss-bonnet holds exactly")
    {
        CHECK(gauss_bonnet_residual(icosahedron()) < 1e-10);
        CHECK(std::abs(angle_defects(torus(2, 1, 40, 20)).sum()) < 1e-10);
        CHECK(angle_defects(genus_two()).sum() == doctest::Approx(-4.0 * M_PI).epsilon(1e-12));
        const std::vector<TriangleMesh> meshes = {icosphere(4), ellipsoid(1, 1.2, 0.8, 3), torus(3, 1, 64, 32),
                                                  genus_two()};
        for (const auto& m : meshes) {
            CHECK(gauss_bonnet_residual(m) < 1e-9 * static_cast<double>(m.num_vertices()));
        }
    }

    TEST_CASE("willmore energy of refined spheres")
    {
        double previous = 0.0;
        for (int s = 2; s <= 6; ++s) {
            const TriangleMesh m = icosphere(s);
            const double w = willmore_energy(m, discrete_curvatures(m));
            if (s > 2) {
                CHECK(std::abs(w - 4.0 * M_PI) <= std::abs(previous - 4.0 * M_PI) + 1e-12);
            }
            previous = w;
        }
        CHECK(testutil::rel_err(previous, 4.0 * M_PI) < 5e-3);
    }

    TEST_CASE("willmore energy of the sqrt(2) torus")
    {
        const double oracle = torus_willmore_oracle(std::sqrt(2.0), 1.0);
        CHECK(oracle == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-8));
        const TriangleMesh m = torus(std::sqrt(2.0), 1.0, 256, 128);
        const double w = willmore_energy(m, discrete_curvatures(m));
        CHECK(testutil::rel_err(w, oracle) < 0.01);
        CHECK(w > 4.0 * M_PI);
    }

    TEST_CASE("willmore energy is scale invariant")
    {
        const TriangleMesh m = ellipsoid(1.0, 1.4, 0.9, 3);
        const double w = willmore_energy(m, discrete_curvatures(m));
        for (double lambda : {0.1, 1.0, 5.0, 10.0}) {
            const TriangleMesh scaled = scale_mesh(m, lambda);
            CHECK(testutil::rel_err(willmore_energy(scaled, discrete_curvatures(scaled)), w) < 1e-10);
        }
    }

    TEST_CASE("clamped fraction shrinks under refinement")
    {
        const TriangleMesh coarse = ellipsoid(1.0, 1.0, 1.5, 2);
        const TriangleMesh fine = ellipsoid(1.0, 1.0, 1.5, 5);
        const double f_coarse = static_cast<double>(discrete_curvatures(coarse).clamped) / coarse.num_vertices();
        const double f_fine = static_cast<double>(discrete_curvatures(fine).clamped) / fine.num_vertices();
        CHECK(f_fine <= f_coarse);
    }

    TEST_CASE("geometric summary of the unit sphere")
    {
        const GeometricSummary g = geometric_summary(icosphere(5));
        CHECK(g.area == doctest::Approx(4.0 * M_PI).epsilon(1e-3));
        CHECK(g.willmore == doctest::Approx(4.0 * M_PI).epsilon(5e-3));
        CHECK(g.mean_S_sq < 1e-3);
        CHECK(g.max_S_sq < 0.05);
        CHECK(g.euler_characteristic == 2);
        CHECK(*g.genus == 0);
    }

    TEST_CASE("analytic surface-of-revolution curvatures")
    {
        const SorCurvatures flat = analytic_sor_curvatures(0.7, 0.0, 0.0);
        CHECK(flat.kappa_meridian == 0.0);
        CHECK(flat.kappa_parallel == 0.0);
        CHECK(flat.H == 0.0);
        CHECK(flat.K == 0.0);
        CHECK(flat.S_sq == 0.0);

        // Sphere of radius 2 as a graph: h = t / sqrt(4 - t^2).
        const double alpha = 4.0;
        for (double t : {0.3, 1.0, 1.9}) {
            const double h = t / std::sqrt(alpha - t * t);
            const double hp = alpha / std::pow(alpha - t * t, 1.5);
            CHECK(-h * h * h + t * hp - h == doctest::Approx(0.0).epsilon(1e-12));
            const SorCurvatures c = analytic_sor_curvatures(t, h, hp);
            CHECK(c.S_sq == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(c.K == doctest::Approx(0.25));
        }
        CHECK_THROWS_AS(analytic_sor_curvatures(0.0, 1.0, 1.0), DomainError);
    }

    TEST_CASE("curvature csv")
    {
        std::ostringstream os;
        const CurvatureField field = discrete_curvatures(icosahedron());
        write_curvature_csv(os, field);
        std::istringstream in(os.str());
        std::string header;
        std::getline(in, header);
        CHECK(header == "vertex_id,K,H,S_sq,weight");
        int lines = 0;
        for (std::string line; std::getline(in, line);) {
            ++lines;
        }
        CHECK(lines == 12);
    }
}
