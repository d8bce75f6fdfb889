#include "helpers.hpp"

#include "skewgap/csc.hpp"
#include "skewgap/error.hpp"
#include "skewgap/mesh.hpp"
#include "skewgap/mesh_io.hpp"
#include "skewgap/surfaces.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace skewgap;

namespace {

std::string icosahedron_obj()
{
    std::ostringstream os;
    write_obj(os, to_data(icosahedron()));
    return os.str();
}

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("skewgap_test_" + name)).string();
}

} // namespace

TEST_SUITE("mesh")
{
    TEST_CASE("icosahedron obj has platonic combinatorics")
    {
        std::istringstream in(icosahedron_obj());
        const TriangleMesh mesh = read_obj(in);
        CHECK(mesh.num_vertices() == 12);
        CHECK(mesh.num_edges() == 30);
        CHECK(mesh.num_faces() == 20);
        const TopologySummary topo = topology(mesh);
        CHECK(topo.euler_characteristic == 2);
        REQUIRE(topo.genus);
        CHECK(*topo.genus == 0);
    }

    TEST_CASE("off edge shared by three faces is rejected")
    {
        // Tetrahedron plus a fin sharing edge 0-1.
        std::istringstream in("OFF\n5 5 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 -1 0\n"
                              "3 0 2 1\n3 0 1 3\n3 1 2 3\n3 0 3 2\n3 0 1 4\n");
        CHECK_THROWS_WITH_AS(read_off(in, "fin.off"), doctest::Contains("shared by 3 faces"), MeshError);
    }

    TEST_CASE("obj quad face is rejected with its line")
    {
        std::istringstream in("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
        CHECK_THROWS_WITH_AS(read_obj(in, "quad.obj"), doctest::Contains("quad.obj:5"), ParseError);
        std::istringstream again("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
        CHECK_THROWS_WITH_AS(read_obj(again, "quad.obj"), doctest::Contains("non-triangle face"), ParseError);
    }

    TEST_CASE("open, misoriented and out-of-range meshes are rejected")
    {
        const std::vector<Vec3> tet = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        CHECK_THROWS_AS(TriangleMesh(tet, {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}}), MeshError);
        CHECK_THROWS_AS(TriangleMesh(tet, {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 2, 3}}), MeshError);
        CHECK_THROWS_AS(TriangleMesh(tet, {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 3, 7}}), MeshError);
        CHECK_NOTHROW(TriangleMesh(tet, {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 3, 2}}));
    }

    TEST_CASE("degenerate face is rejected")
    {
        std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0}};
        // Vertex 4 is collinear with 0 and 1.
        CHECK_THROWS_AS(TriangleMesh(v, {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 3, 2}, {0, 1, 4}}), MeshError);
    }

    TEST_CASE("torus grids have genus one at any resolution")
    {
        for (int n : {3, 8, 33}) {
            const TopologySummary topo = topology(torus(2.0, 0.5, n + 2, n));
            CHECK(topo.euler_characteristic == 0);
            CHECK(*topo.genus == 1);
        }
    }

    TEST_CASE("genus two mesh")
    {
        const TopologySummary topo = topology(genus_two());
        CHECK(topo.euler_characteristic == -2);
        CHECK(*topo.genus == 2);
        CHECK(topo.components == 1);
    }

    TEST_CASE("euler characteristic equals 2 - 2g on closed orientable meshes")
    {
        const std::vector<TriangleMesh> meshes = {icosphere(2), ellipsoid(1, 2, 3, 1), torus(3, 1, 12, 8), genus_two(),
                                                  quotient_torus({0.5, 1}, 30, 12)};
        for (const auto& m : meshes) {
            const TopologySummary topo = topology(m);
            const int v = static_cast<int>(m.num_vertices());
            const int e = static_cast<int>(m.num_edges());
            const int f = static_cast<int>(m.num_faces());
            CHECK(v - e + f == topo.euler_characteristic);
            CHECK(topo.euler_characteristic == 2 - 2 * *topo.genus);
        }
    }

    TEST_CASE("sphere area converges to 4 pi")
    {
        double previous_error = 1.0;
        for (int s = 1; s <= 5; ++s) {
            const double error = testutil::rel_err(total_area(icosphere(s)), 4.0 * M_PI);
            CHECK(error < previous_error);
            previous_error = error;
        }
        CHECK(previous_error < 1e-3);
    }

    TEST_CASE("torus area converges to the quadrature value")
    {
        // Independent oracle: integrate the parametric area element r (R + r cos v).
        const double R = 2.0, r = 1.0;
        const double oracle =
            2.0 * M_PI * testutil::simpson([&](double v) { return r * (R + r * std::cos(v)); }, 0.0, 2.0 * M_PI);
        CHECK(oracle == doctest::Approx(8.0 * M_PI * M_PI).epsilon(1e-12));
        const double coarse = testutil::rel_err(total_area(torus(R, r, 32, 16)), oracle);
        const double fine = testutil::rel_err(total_area(torus(R, r, 128, 64)), oracle);
        CHECK(fine < coarse);
        CHECK(fine < 2e-3);
    }

    TEST_CASE("scaling laws")
    {
        const TriangleMesh ico = icosahedron();
        CHECK(total_area(scale_mesh(ico, 3.0)) == doctest::Approx(9.0 * total_area(ico)).epsilon(1e-12));
        const TriangleMesh doubled = scale_mesh(ico, 2.0);
        CHECK(total_area(doubled) == doctest::Approx(4.0 * total_area(ico)).epsilon(1e-12));
        CHECK(topology(doubled).euler_characteristic == 2);

        const TriangleMesh same = scale_mesh(ico, 1.0);
        const TriangleMesh round_trip = scale_mesh(scale_mesh(ico, 0.5), 2.0);
        for (std::size_t i = 0; i < ico.num_vertices(); ++i) {
            CHECK(same.vertices()[i] == ico.vertices()[i]);
            CHECK((round_trip.vertices()[i] - ico.vertices()[i]).norm() < 1e-15);
        }
        CHECK(same.faces() == ico.faces());
        CHECK_THROWS_AS(scale_mesh(ico, 0.0), DomainError);
        CHECK_THROWS_AS(scale_mesh(ico, -1.0), DomainError);

        for (double lambda : {0.1, 7.0}) {
            const TriangleMesh t = torus(2, 1, 20, 10);
            CHECK(testutil::rel_err(total_area(scale_mesh(t, lambda)), lambda * lambda * total_area(t)) < 1e-12);
        }
    }

    TEST_CASE("revolve: sphere, torus and quotient torus")
    {
        const TriangleMesh sphere = revolve(sphere_of_revolution(1.0, 17).profile, 24, Closure::capped);
        CHECK(topology(sphere).euler_characteristic == 2);

        const RevolutionSurface ring = torus_of_revolution(2.0, 1.0, 20);
        const TriangleMesh tor = revolve(ring.profile, 30, Closure::periodic);
        CHECK(topology(tor).euler_characteristic == 0);
        CHECK_FALSE(tor.periodic());

        const int n_s = 40, n_theta = 16;
        const TriangleMesh q = quotient_torus({0.5, 1}, n_s, n_theta);
        CHECK(q.periodic());
        CHECK(topology(q).euler_characteristic == 0);
        // Triangle count for periodic closure.
        CHECK(q.num_faces() == static_cast<std::size_t>(2 * n_s * n_theta));
        CHECK(tor.num_faces() == static_cast<std::size_t>(2 * 20 * 30));
    }

    TEST_CASE("revolve rejects unusable profiles")
    {
        ProfileCurve p;
        p.samples = {{1.0, 0.0, 0.0}, {1.0, 0.0, 0.5}, {2.0, 1.0, 1.0}};
        CHECK_THROWS_AS(revolve(p, 8, Closure::periodic), DomainError);
        CHECK_THROWS_AS(revolve(sphere_of_revolution(1.0, 9).profile, 2, Closure::capped), DomainError);
        CHECK_THROWS_AS(revolve(torus_of_revolution(2.0, 1.0, 10).profile, 8, Closure::capped), DomainError);
    }

    TEST_CASE("save and load round trip")
    {
        const TriangleMesh mesh = ellipsoid(1.0, 1.3, 0.7, 2);
        for (const char* ext : {".obj", ".off"}) {
            const std::string path = temp_path(std::string("roundtrip") + ext);
            save_mesh(path, mesh, format_from_path(path));
            const TriangleMesh back = load_mesh(path);
            REQUIRE(back.num_vertices() == mesh.num_vertices());
            CHECK(back.faces() == mesh.faces());
            for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
                CHECK(back.vertices()[i] == mesh.vertices()[i]);
            }
            std::filesystem::remove(path);
        }
    }

    TEST_CASE("unrolled quotient torus is an open strip of copies")
    {
        const TriangleMesh q = quotient_torus({0.5, 1}, 30, 10);
        const MeshData one = unrolled(q, 1);
        const MeshData two = unrolled(q, 2);
        CHECK(two.faces.size() == 2 * q.num_faces());
        CHECK(two.vertices.size() > one.vertices.size());
        CHECK_THROWS_AS(unrolled(q, 0), DomainError);
    }

    TEST_CASE("unknown mesh extension")
    {
        CHECK_THROWS_AS(format_from_path("surface.stl"), ParseError);
    }
}
