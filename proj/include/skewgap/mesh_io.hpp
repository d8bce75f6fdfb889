#pragma once

#include "skewgap/mesh.hpp"

#include <iosfwd>
#include <string>

namespace skewgap {

enum class MeshFormat { obj, off };

/// Picks the format from the file extension (case-insensitive `.obj` / `.off`).
MeshFormat format_from_path(const std::string& path);

/// Reads an indexed triangle mesh and validates it. Errors carry `source:line`.
TriangleMesh load_mesh(const std::string& path, MeshFormat format);
TriangleMesh load_mesh(const std::string& path);
TriangleMesh read_obj(std::istream& in, const std::string& source = "<stream>");
TriangleMesh read_off(std::istream& in, const std::string& source = "<stream>");

/// Raw geometry for export; need not be closed (used for open stacked surfaces).
struct MeshData {
    std::vector<Vec3> vertices;
    std::vector<Face> faces;
};

/// Unrolls a periodic mesh across `copies` periods into an open surface in R^3.
/// Non-periodic meshes are returned unchanged.
MeshData unrolled(const TriangleMesh& mesh, int copies = 1);
MeshData to_data(const TriangleMesh& mesh);

void write_obj(std::ostream& out, const MeshData& mesh);
void write_off(std::ostream& out, const MeshData& mesh);
void save_mesh(const std::string& path, const MeshData& mesh, MeshFormat format);
void save_mesh(const std::string& path, const TriangleMesh& mesh, MeshFormat format);

} // namespace skewgap
