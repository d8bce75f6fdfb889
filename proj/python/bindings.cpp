#include "skewgap/bounds.hpp"
#include "skewgap/csc.hpp"
#include "skewgap/curvature.hpp"
#include "skewgap/error.hpp"
#include "skewgap/fleet.hpp"
#include "skewgap/mesh_io.hpp"
#include "skewgap/report.hpp"
#include "skewgap/spectral.hpp"
#include "skewgap/surfaces.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace skewgap;

namespace {

// nlohmann -> Python via the json module keeps the binding free of a converter.
py::object to_python(const Json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

Eigen::MatrixXd vertex_array(const TriangleMesh& mesh)
{
    Eigen::MatrixXd out(static_cast<Eigen::Index>(mesh.num_vertices()), 3);
    for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = mesh.vertices()[i].transpose();
    }
    return out;
}

Eigen::MatrixXi face_array(const TriangleMesh& mesh)
{
    Eigen::MatrixXi out(static_cast<Eigen::Index>(mesh.num_faces()), 3);
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        for (int k = 0; k < 3; ++k) {
            out(static_cast<Eigen::Index>(f), k) = mesh.faces()[f][static_cast<std::size_t>(k)];
        }
    }
    return out;
}

TriangleMesh mesh_from_arrays(const Eigen::MatrixXd& vertices, const Eigen::MatrixXi& faces)
{
    if (vertices.cols() != 3 || faces.cols() != 3) {
        throw DomainError("vertices and faces must have three columns");
    }
    std::vector<Vec3> v(static_cast<std::size_t>(vertices.rows()));
    for (Eigen::Index i = 0; i < vertices.rows(); ++i) {
        v[static_cast<std::size_t>(i)] = vertices.row(i).transpose();
    }
    std::vector<Face> f(static_cast<std::size_t>(faces.rows()));
    for (Eigen::Index i = 0; i < faces.rows(); ++i) {
        f[static_cast<std::size_t>(i)] = {faces(i, 0), faces(i, 1), faces(i, 2)};
    }
    return TriangleMesh(std::move(v), std::move(f));
}

py::dict profile_dict(const ProfileCurve& p)
{
    std::vector<double> t, g, s;
    for (const auto& q : p.samples) {
        t.push_back(q.t);
        g.push_back(q.g);
        s.push_back(q.s);
    }
    py::dict d;
    d["t"] = t;
    d["g"] = g;
    d["s"] = s;
    d["period"] = p.period;
    return d;
}

SurfaceSpec make_spec(const std::string& surface, const py::kwargs& kw)
{
    SurfaceSpec spec;
    spec.kind = parse_surface_kind(surface);
    for (const auto& [key, value] : kw) {
        const auto name = key.cast<std::string>();
        if (name == "radius") spec.radius = value.cast<double>();
        else if (name == "a") spec.a = value.cast<double>();
        else if (name == "b") spec.b = value.cast<double>();
        else if (name == "c") spec.c = value.cast<double>();
        else if (name == "R") spec.major_radius = value.cast<double>();
        else if (name == "r") spec.minor_radius = value.cast<double>();
        else if (name == "k") spec.k = value.cast<double>();
        else if (name == "sign") spec.sign = value.cast<int>();
        else if (name == "mesh") spec.mesh_path = value.cast<std::string>();
        else if (name == "scale") spec.scale = value.cast<double>();
        else if (name == "subdiv") spec.subdivisions = value.cast<int>();
        else if (name == "n_profile") spec.n_profile = value.cast<int>();
        else if (name == "n_theta") spec.n_theta = value.cast<int>();
        else if (name == "sor_samples") spec.sor_samples = value.cast<int>();
        else throw DomainError("unknown surface parameter '" + name + "'");
    }
    return spec;
}

} // namespace

PYBIND11_MODULE(_skewgap, m)
{
    m.doc() = "Spectral gaps of a particle confined to a curved surface";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<MeshError>(m, "MeshError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

    py::class_<PhysicalUnits>(m, "PhysicalUnits")
        .def(py::init([](double hbar, double mass) { return PhysicalUnits{hbar, mass}; }), py::arg("hbar") = 1.0,
             py::arg("mass") = 1.0)
        .def_readwrite("hbar", &PhysicalUnits::hbar)
        .def_readwrite("mass", &PhysicalUnits::mass)
        .def_property_readonly("energy_factor", &PhysicalUnits::energy_factor);

    py::class_<TriangleMesh>(m, "TriangleMesh")
        .def(py::init(&mesh_from_arrays), py::arg("vertices"), py::arg("faces"))
        .def_property_readonly("vertices", &vertex_array)
        .def_property_readonly("faces", &face_array)
        .def_property_readonly("num_vertices", &TriangleMesh::num_vertices)
        .def_property_readonly("num_faces", &TriangleMesh::num_faces)
        .def_property_readonly("periodic", &TriangleMesh::periodic)
        .def_property_readonly("euler_characteristic",
                               [](const TriangleMesh& mesh) { return topology(mesh).euler_characteristic; })
        .def_property_readonly("genus", [](const TriangleMesh& mesh) { return topology(mesh).genus; })
        .def_property_readonly("area", &total_area);

    m.def("icosphere", &icosphere, py::arg("subdivisions"), py::arg("radius") = 1.0);
    m.def("ellipsoid", &ellipsoid, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("subdivisions"));
    m.def("torus", &torus, py::arg("R"), py::arg("r"), py::arg("n_major"), py::arg("n_minor"));
    m.def("quotient_torus",
          [](double k, int sign, int n_s, int n_theta) { return quotient_torus({k, sign}, n_s, n_theta); },
          py::arg("k"), py::arg("sign") = 1, py::arg("n_s") = 96, py::arg("n_theta") = 192);
    m.def("scale_mesh", &scale_mesh, py::arg("mesh"), py::arg("factor"));
    m.def("load_mesh", py::overload_cast<const std::string&>(&load_mesh), py::arg("path"));
    m.def(
        "save_mesh",
        [](const std::string& path, const TriangleMesh& mesh) { save_mesh(path, mesh, format_from_path(path)); },
        py::arg("path"), py::arg("mesh"));

    py::class_<GeometricSummary>(m, "GeometricSummary")
        .def_readonly("area", &GeometricSummary::area)
        .def_readonly("willmore", &GeometricSummary::willmore)
        .def_readonly("euler_characteristic", &GeometricSummary::euler_characteristic)
        .def_readonly("genus", &GeometricSummary::genus)
        .def_readonly("gauss_bonnet_residual", &GeometricSummary::gauss_bonnet_residual)
        .def_property_readonly("mean_potential", &GeometricSummary::mean_potential)
        .def_property_readonly("max_potential", &GeometricSummary::max_potential)
        .def_property_readonly("potential_spread", &GeometricSummary::potential_spread)
        .def("to_dict", [](const GeometricSummary& g) { return to_python(summary_json(g)); });

    m.def("geometric_summary", py::overload_cast<const TriangleMesh&>(&geometric_summary), py::arg("mesh"));
    m.def(
        "curvatures",
        [](const TriangleMesh& mesh) {
            const CurvatureField f = discrete_curvatures(mesh);
            py::dict d;
            d["K"] = f.K;
            d["H"] = f.H;
            d["S_sq"] = f.S_sq;
            d["weight"] = f.weight;
            d["potential"] = Eigen::VectorXd(f.potential());
            return d;
        },
        py::arg("mesh"));

    py::class_<SpectralResult>(m, "SpectralResult")
        .def_readonly("eigenvalues", &SpectralResult::eigenvalues)
        .def_readonly("vectors", &SpectralResult::vectors)
        .def_readonly("mass", &SpectralResult::mass)
        .def_readonly("residuals", &SpectralResult::residuals)
        .def_readonly("mesh_size", &SpectralResult::mesh_size)
        .def_readonly("warnings", &SpectralResult::warnings)
        .def_property_readonly("modes",
                               [](const SpectralResult& r) {
                                   std::vector<int> out;
                                   for (const auto& l : r.labels) out.push_back(l.mode);
                                   return out;
                               })
        .def_property_readonly("parities",
                               [](const SpectralResult& r) {
                                   std::vector<int> out;
                                   for (const auto& l : r.labels) out.push_back(l.parity);
                                   return out;
                               })
        .def("energies", &SpectralResult::energies, py::arg("units") = PhysicalUnits{})
        .def("constant_similarity", &SpectralResult::constant_similarity, py::arg("index") = 0)
        .def(
            "to_dict",
            [](const SpectralResult& r, const PhysicalUnits& units) { return to_python(spectrum_json(r, units)); },
            py::arg("units") = PhysicalUnits{})
        .def("__len__", &SpectralResult::size);

    m.def("solve_fem", &solve_fem, py::arg("mesh"), py::arg("count") = 10, py::arg("tol") = kDefaultSolverTol,
          py::call_guard<py::gil_scoped_release>());

    m.def(
        "analyze",
        [](const std::string& surface, const std::string& method, int count, double tol, const py::kwargs& kw) {
            const SurfaceSpec spec = make_spec(surface, kw);
            const Method how = parse_method(method);
            Analysis a;
            {
                py::gil_scoped_release release;
                a = analyze(spec, how, count, tol);
            }
            return py::make_tuple(a.geom, a.spectrum);
        },
        py::arg("surface") = "sphere", py::arg("method") = "fem", py::arg("count") = 10,
        py::arg("tol") = kDefaultSolverTol);

    m.def(
        "bound_report",
        [](const std::string& label, const GeometricSummary& geom, const SpectralResult& spectrum,
           const PhysicalUnits& units, double tol, std::optional<double> c_g, int result2_k) {
            BoundOptions options;
            options.tol = tol;
            options.c_g = c_g;
            options.result2_k = result2_k;
            return to_python(bound_report_json(make_bound_report(label, geom, spectrum, units, options)));
        },
        py::arg("label"), py::arg("summary"), py::arg("spectrum"), py::arg("units") = PhysicalUnits{},
        py::arg("tol") = 0.02, py::arg("c_g") = py::none(), py::arg("result2_k") = 2);

    m.def("gap_bound_result1", &gap_bound_result1, py::arg("summary"), py::arg("units") = PhysicalUnits{});
    m.def("gap_bound_nona", &gap_bound_nona, py::arg("summary"), py::arg("genus"),
          py::arg("units") = PhysicalUnits{});
    m.def("gap_bound_oka_printed", &gap_bound_oka_printed, py::arg("summary"), py::arg("genus"),
          py::arg("units") = PhysicalUnits{});
    m.def("gap_bound_oka_reconstructed", &gap_bound_oka_reconstructed, py::arg("summary"), py::arg("genus"),
          py::arg("units") = PhysicalUnits{});
    m.def("gap_bound_result2", &gap_bound_result2, py::arg("summary"), py::arg("k"), py::arg("c_g"),
          py::arg("units") = PhysicalUnits{});
    m.def("lambda0_lower_bound", &lambda0_lower_bound, py::arg("summary"), py::arg("units") = PhysicalUnits{});

    m.def("csc_bifurcation_value", &csc_bifurcation_value);
    m.def("csc_double_root", [] {
        const DoubleRoot r = csc_double_root();
        return py::make_tuple(r.k, r.t);
    });
    m.def("csc_discriminant", &csc_discriminant, py::arg("t"), py::arg("k"));
    m.def("csc_denominator", &csc_denominator, py::arg("t"), py::arg("k"));
    m.def(
        "csc_intervals",
        [](double k) {
            const py::object report = to_python(branch_report_json(k, csc_intervals(k)));
            return py::object(report["branches"]);
        },
        py::arg("k"));
    m.def(
        "csc_profile",
        [](double k, int sign, const std::string& branch, int n_samples, int periods) {
            for (const auto& b : csc_intervals(k)) {
                if (to_string(b.kind) == branch) {
                    const ProfileCurve p = csc_profile({k, sign}, b, n_samples);
                    return profile_dict(periods > 0 ? stack_profile(p, periods) : p);
                }
            }
            throw DomainError("no " + branch + " branch for k = " + std::to_string(k));
        },
        py::arg("k"), py::arg("sign") = 1, py::arg("branch") = "outer", py::arg("n_samples") = 201,
        py::arg("periods") = 0);
}
