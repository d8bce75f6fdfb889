#include "skewgap/mesh_io.hpp"

#include "skewgap/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <locale>
#include <sstream>

namespace skewgap {

namespace {

std::string where(const std::string& source, std::size_t line)
{
    return source + ":" + std::to_string(line) + ": ";
}

// Validation errors from the mesh constructor gain the source name.
TriangleMesh build(std::vector<Vec3> vertices, std::vector<Face> faces, const std::string& source)
{
    try {
        return TriangleMesh(std::move(vertices), std::move(faces));
    } catch (const MeshError& e) {
        throw MeshError(source + ": " + e.what());
    }
}

// Parses an OBJ face token "i", "i/t", "i//n" or "i/t/n"; negative indices are relative.
int obj_index(const std::string& token, int vertex_count, const std::string& loc)
{
    const std::string head = token.substr(0, token.find('/'));
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(head, &used);
    } catch (const std::exception&) {
        throw ParseError(loc + "bad face index '" + token + "'");
    }
    if (used != head.size() || value == 0) {
        throw ParseError(loc + "bad face index '" + token + "'");
    }
    const long index = value > 0 ? value - 1 : vertex_count + value;
    if (index < 0 || index >= vertex_count) {
        throw ParseError(loc + "face index " + std::to_string(value) + " out of range");
    }
    return static_cast<int>(index);
}

} // namespace

MeshFormat format_from_path(const std::string& path)
{
    const auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == "obj") {
        return MeshFormat::obj;
    }
    if (ext == "off") {
        return MeshFormat::off;
    }
    throw ParseError("cannot infer mesh format of '" + path + "' (expected .obj or .off)");
}

TriangleMesh read_obj(std::istream& in, const std::string& source)
{
    std::vector<Vec3> vertices;
    std::vector<Face> faces;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream is(line);
        is.imbue(std::locale::classic());
        std::string tag;
        if (!(is >> tag) || tag[0] == '#') {
            continue;
        }
        if (tag == "v") {
            Vec3 p;
            if (!(is >> p.x() >> p.y() >> p.z())) {
                throw ParseError(where(source, line_no) + "vertex record needs three coordinates");
            }
            vertices.push_back(p);
        } else if (tag == "f") {
            std::vector<std::string> tokens;
            std::string tok;
            while (is >> tok) {
                tokens.push_back(tok);
            }
            if (tokens.size() != 3) {
                throw ParseError(where(source, line_no) + "non-triangle face with " + std::to_string(tokens.size()) +
                                 " vertices");
            }
            Face f{};
            for (int k = 0; k < 3; ++k) {
                f[k] = obj_index(tokens[k], static_cast<int>(vertices.size()), where(source, line_no));
            }
            faces.push_back(f);
        }
        // vt, vn, g, o, s, usemtl, mtllib: ignored
    }
    return build(std::move(vertices), std::move(faces), source);
}

TriangleMesh read_off(std::istream& in, const std::string& source)
{
    std::size_t line_no = 0;
    auto next_record = [&](std::string& out) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) {
                line.erase(hash);
            }
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                out = line;
                return true;
            }
        }
        return false;
    };

    std::string record;
    if (!next_record(record)) {
        throw ParseError(source + ": empty OFF file");
    }
    std::istringstream header(record);
    std::string magic;
    header >> magic;
    if (magic != "OFF") {
        throw ParseError(where(source, line_no) + "missing 'OFF' header");
    }
    // Counts may share the header line.
    long nv = -1, nf = -1, ne = 0;
    if (!(header >> nv >> nf)) {
        if (!next_record(record)) {
            throw ParseError(source + ": missing counts line");
        }
        std::istringstream counts(record);
        if (!(counts >> nv >> nf)) {
            throw ParseError(where(source, line_no) + "bad counts line");
        }
        counts >> ne;
    }
    if (nv < 0 || nf < 0) {
        throw ParseError(where(source, line_no) + "negative element counts");
    }

    std::vector<Vec3> vertices(static_cast<std::size_t>(nv));
    for (auto& v : vertices) {
        if (!next_record(record)) {
            throw ParseError(source + ": unexpected end of file in vertex list");
        }
        std::istringstream is(record);
        is.imbue(std::locale::classic());
        if (!(is >> v.x() >> v.y() >> v.z())) {
            throw ParseError(where(source, line_no) + "vertex record needs three coordinates");
        }
    }
    std::vector<Face> faces(static_cast<std::size_t>(nf));
    for (auto& f : faces) {
        if (!next_record(record)) {
            throw ParseError(source + ": unexpected end of file in face list");
        }
        std::istringstream is(record);
        int count = 0;
        if (!(is >> count)) {
            throw ParseError(where(source, line_no) + "bad face record");
        }
        if (count != 3) {
            throw ParseError(where(source, line_no) + "non-triangle face with " + std::to_string(count) +
                             " vertices");
        }
        for (int k = 0; k < 3; ++k) {
            long idx = -1;
            if (!(is >> idx)) {
                throw ParseError(where(source, line_no) + "face record needs three indices");
            }
            if (idx < 0 || idx >= nv) {
                throw ParseError(where(source, line_no) + "face index " + std::to_string(idx) + " out of range");
            }
            f[k] = static_cast<int>(idx);
        }
    }
    return build(std::move(vertices), std::move(faces), source);
}

TriangleMesh load_mesh(const std::string& path, MeshFormat format)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    return format == MeshFormat::obj ? read_obj(in, path) : read_off(in, path);
}

TriangleMesh load_mesh(const std::string& path)
{
    return load_mesh(path, format_from_path(path));
}

MeshData to_data(const TriangleMesh& mesh)
{
    return {mesh.vertices(), mesh.faces()};
}

MeshData unrolled(const TriangleMesh& mesh, int copies)
{
    if (!mesh.periodic()) {
        return to_data(mesh);
    }
    if (copies < 1) {
        throw DomainError("unrolled needs at least one copy");
    }
    int min_lift = 0, max_lift = 0;
    for (const auto& l : mesh.lifts()) {
        for (int x : l) {
            min_lift = std::min(min_lift, x);
            max_lift = std::max(max_lift, x);
        }
    }
    const int layers = copies + max_lift - min_lift;
    const auto nv = static_cast<int>(mesh.num_vertices());
    std::vector<int> remap(static_cast<std::size_t>(nv) * layers, -1);
    MeshData out;
    for (int c = 0; c < copies; ++c) {
        for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
            Face face{};
            for (int k = 0; k < 3; ++k) {
                const int v = mesh.faces()[f][k];
                const int layer = c + mesh.lifts()[f][k] - min_lift;
                int& slot = remap[static_cast<std::size_t>(layer) * nv + v];
                if (slot < 0) {
                    slot = static_cast<int>(out.vertices.size());
                    out.vertices.push_back(mesh.vertices()[v] + (layer + min_lift) * mesh.period());
                }
                face[k] = slot;
            }
            out.faces.push_back(face);
        }
    }
    return out;
}

void write_obj(std::ostream& out, const MeshData& mesh)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& v : mesh.vertices) {
        os << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    }
    for (const auto& f : mesh.faces) {
        os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    }
    out << os.str();
}

void write_off(std::ostream& out, const MeshData& mesh)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    os << "OFF\n" << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
    for (const auto& v : mesh.vertices) {
        os << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    }
    for (const auto& f : mesh.faces) {
        os << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    }
    out << os.str();
}

void save_mesh(const std::string& path, const MeshData& mesh, MeshFormat format)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    if (format == MeshFormat::obj) {
        write_obj(out, mesh);
    } else {
        write_off(out, mesh);
    }
    if (!out) {
        throw Error("failed writing '" + path + "'");
    }
}

void save_mesh(const std::string& path, const TriangleMesh& mesh, MeshFormat format)
{
    save_mesh(path, mesh.periodic() ? unrolled(mesh) : to_data(mesh), format);
}

} // namespace skewgap
