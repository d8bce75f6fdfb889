#include "skewgap/report.hpp"

#include "skewgap/error.hpp"

#include <fstream>

namespace skewgap {

namespace {

template <typename T>
T field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing JSON field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON field '") + key + "': " + e.what());
    }
}

Json optional_number(const std::optional<double>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

} // namespace

Json units_json(const PhysicalUnits& units)
{
    return Json{{"hbar", units.hbar}, {"mass", units.mass}};
}

PhysicalUnits units_from_json(const Json& j)
{
    PhysicalUnits u;
    u.hbar = field<double>(j, "hbar");
    u.mass = field<double>(j, "mass");
    u.energy_factor();
    return u;
}

Json spectrum_json(const SpectralResult& result, const PhysicalUnits& units)
{
    Json labels = Json::array();
    for (const auto& l : result.labels) {
        Json entry{{"mode", l.mode}, {"parity", l.parity}};
        if (l.mode > 0) {
            entry["copy"] = l.copy;
        }
        labels.push_back(entry);
    }
    Json multiplicities = Json::array();
    for (const auto& group : degenerate_groups(result.eigenvalues)) {
        multiplicities.push_back(group.size());
    }
    return Json{{"lambda", result.eigenvalues},
                {"energy", result.energies(units)},
                {"labels", labels},
                {"residuals", result.residuals},
                {"multiplicities", multiplicities},
                {"mesh_size", result.mesh_size},
                {"warnings", result.warnings},
                {"units", units_json(units)}};
}

SpectralResult spectrum_from_json(const Json& j)
{
    SpectralResult r;
    r.eigenvalues = field<std::vector<double>>(j, "lambda");
    if (j.contains("residuals")) {
        r.residuals = field<std::vector<double>>(j, "residuals");
    }
    r.residuals.resize(r.eigenvalues.size(), 0.0);
    r.labels.assign(r.eigenvalues.size(), SpectralLabel{});
    if (j.contains("labels")) {
        const Json& labels = j.at("labels");
        if (!labels.is_array() || labels.size() != r.eigenvalues.size()) {
            throw ParseError("'labels' must be an array with one entry per eigenvalue");
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
            r.labels[i].mode = field<int>(labels[i], "mode");
            r.labels[i].parity = field<int>(labels[i], "parity");
            if (labels[i].contains("copy")) {
                r.labels[i].copy = field<int>(labels[i], "copy");
            }
        }
    }
    if (j.contains("mesh_size")) {
        r.mesh_size = field<double>(j, "mesh_size");
    }
    for (std::size_t i = 1; i < r.eigenvalues.size(); ++i) {
        if (r.eigenvalues[i] < r.eigenvalues[i - 1]) {
            throw ParseError("eigenvalues in 'lambda' are not sorted");
        }
    }
    return r;
}

Json summary_json(const GeometricSummary& geom)
{
    return Json{{"area", geom.area},
                {"willmore", geom.willmore},
                {"willmore_over_area", geom.willmore / geom.area},
                {"mean_potential", geom.mean_potential()},
                {"max_potential", geom.max_potential()},
                {"potential_spread", geom.potential_spread()},
                {"euler_characteristic", geom.euler_characteristic},
                {"genus", geom.genus ? Json(*geom.genus) : Json(nullptr)},
                {"gauss_bonnet_residual", geom.gauss_bonnet_residual}};
}

Json bound_report_json(const BoundReport& report)
{
    Json bounds{{"result1", report.result1},
                {"nona", optional_number(report.nona)},
                {"oka_printed", optional_number(report.oka_printed)},
                {"oka_reconstructed", optional_number(report.oka_reconstructed)}};
    if (report.result2) {
        bounds["result2"] = Json{{"value", *report.result2},
                                 {"k", report.result2_k},
                                 {"c_g", report.result2_c_g},
                                 {"status", "report-only, not certified"}};
    }
    bounds["lambda0_lower"] = report.lambda0_lower;
    if (!report.constant_skew_note.empty()) {
        bounds["constant_skew_note"] = report.constant_skew_note;
    }

    Json verdicts = Json::array();
    for (const auto& v : report.verdicts) {
        verdicts.push_back(Json{{"bound", v.bound}, {"pass", v.pass}, {"margin", v.margin}, {"rhs", v.rhs},
                                {"observed", v.observed}});
    }
    Json out{{"surface", report.surface},
             {"units", units_json(report.units)},
             {"bounds", bounds},
             {"ground_energy", report.ground_energy},
             {"gaps", report.gaps},
             {"verdicts", verdicts},
             {"pass", report.all_pass()}};
    if (report.weyl) {
        out["weyl"] = Json{{"c_g", report.weyl->c_g},
                           {"reference", report.weyl->reference},
                           {"ratios", report.weyl->ratios},
                           {"running_min", report.weyl->running_min},
                           {"status", "report-only, not certified"}};
    }
    return out;
}

Json branch_report_json(double k, const std::vector<CscBranch>& branches)
{
    Json list = Json::array();
    bool degenerate = false;
    for (const auto& b : branches) {
        list.push_back(Json{{"t_lo", b.t_lo}, {"t_hi", b.t_hi}, {"kind", to_string(b.kind)}, {"degenerate", b.degenerate}});
        degenerate = degenerate || b.degenerate;
    }
    return Json{{"k", k}, {"k0", csc_bifurcation_value()}, {"degenerate", degenerate}, {"branches", list}};
}

void write_json(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw Error("failed writing '" + path + "'");
    }
}

Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace skewgap
