#pragma once

#include "ghf/mesh.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace ghf {

/// Read a mesh from OFF or OBJ (chosen by file extension; vertex and face
/// records only).
TriMesh read_mesh(const std::string& path);

/// Write OFF or OBJ (by extension). Positions are emitted with 17 significant
/// digits so that doubles round-trip exactly.
void write_mesh(const TriMesh& mesh, const std::string& path);

TriMesh read_off(std::istream& in);
void write_off(const TriMesh& mesh, std::ostream& out);
TriMesh read_obj(std::istream& in);
void write_obj(const TriMesh& mesh, std::ostream& out);

/// FNV-1a over the exact position bits and face indices. Stable across runs
/// and across an OFF/OBJ round-trip.
std::uint64_t mesh_hash(const TriMesh& mesh);

/// Position-free meshes (e.g. the flat torus) travel as JSON: faces plus
/// canonical edge lengths, with an optional per-vertex weight.
void write_intrinsic_json(const TriMesh& mesh, const Cochain0* weight, const std::string& path);
std::pair<TriMesh, Cochain0> read_intrinsic_json(const std::string& path);

/// Sparse matrix as "row col value" lines, for debugging.
void write_coordinate_format(const SparseMat& m, std::ostream& out);

} // namespace ghf
