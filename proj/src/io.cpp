#include "ghf/io.hpp"

#include <json.hpp>

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ghf {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") != std::string::npos) return line;
    }
    return {};
}

} // namespace

TriMesh read_off(std::istream& in) {
    std::string header = next_content_line(in);
    if (header.find("OFF") == std::string::npos) throw IOError("missing OFF header");

    std::istringstream counts(next_content_line(in));
    long nv = 0, nf = 0, ne = 0;
    if (!(counts >> nv >> nf >> ne)) throw IOError("bad OFF count line");

    std::vector<Vec3> positions(nv);
    for (long v = 0; v < nv; v++) {
        std::istringstream row(next_content_line(in));
        if (!(row >> positions[v][0] >> positions[v][1] >> positions[v][2]))
            throw IOError("bad OFF vertex line");
    }
    std::vector<std::array<int, 3>> faces(nf);
    for (long f = 0; f < nf; f++) {
        std::istringstream row(next_content_line(in));
        int k = 0;
        if (!(row >> k >> faces[f][0] >> faces[f][1] >> faces[f][2]) || k != 3)
            throw IOError("OFF reader supports triangles only");
    }
    return build_mesh(positions, faces);
}

void write_off(const TriMesh& mesh, std::ostream& out) {
    out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_faces() << ' ' << mesh.num_edges() << '\n';
    out << std::setprecision(17);
    for (const auto& p : mesh.positions) out << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
    for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

TriMesh read_obj(std::istream& in) {
    std::vector<Vec3> positions;
    std::vector<std::array<int, 3>> faces;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string tag;
        if (!(row >> tag)) continue;
        if (tag == "v") {
            Vec3 p;
            if (!(row >> p[0] >> p[1] >> p[2])) throw IOError("bad OBJ vertex line");
            positions.push_back(p);
        } else if (tag == "f") {
            std::array<int, 3> f{};
            for (int c = 0; c < 3; c++) {
                std::string token;
                if (!(row >> token)) throw IOError("bad OBJ face line");
                f[c] = std::stoi(token.substr(0, token.find('/'))) - 1;
            }
            faces.push_back(f);
        }
    }
    return build_mesh(positions, faces);
}

void write_obj(const TriMesh& mesh, std::ostream& out) {
    out << std::setprecision(17);
    for (const auto& p : mesh.positions) out << "v " << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
    for (const auto& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

TriMesh read_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot open " + path);
    if (ends_with(path, ".obj")) return read_obj(in);
    return read_off(in);
}

void write_mesh(const TriMesh& mesh, const std::string& path) {
    if (!mesh.has_positions()) throw IOError("intrinsic meshes have no positions to write");
    std::ofstream out(path);
    if (!out) throw IOError("cannot open " + path + " for writing");
    if (ends_with(path, ".obj"))
        write_obj(mesh, out);
    else
        write_off(mesh, out);
    if (!out) throw IOError("write failed for " + path);
}

std::uint64_t mesh_hash(const TriMesh& mesh) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void* data, size_t n) {
        const unsigned char* bytes = static_cast<const unsigned char*>(data);
        for (size_t i = 0; i < n; i++) {
            h ^= bytes[i];
            h *= 1099511628211ull;
        }
    };
    std::uint32_t nv = mesh.num_vertices(), nf = mesh.num_faces();
    mix(&nv, sizeof nv);
    mix(&nf, sizeof nf);
    for (const auto& p : mesh.positions) {
        double coords[3] = {p[0], p[1], p[2]};
        mix(coords, sizeof coords);
    }
    for (const auto& f : mesh.faces) {
        std::int32_t idx[3] = {f[0], f[1], f[2]};
        mix(idx, sizeof idx);
    }
    if (!mesh.has_positions())
        for (double len : mesh.edge_length) mix(&len, sizeof len);
    return h;
}

void write_coordinate_format(const SparseMat& m, std::ostream& out) {
    out << std::setprecision(17);
    for (int k = 0; k < m.outerSize(); k++)
        for (SparseMat::InnerIterator it(m, k); it; ++it)
            out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

void write_intrinsic_json(const TriMesh& mesh, const Cochain0* weight, const std::string& path) {
    nlohmann::json j;
    j["schema"] = 1;
    j["type"] = "intrinsic-trimesh";
    j["n_vertices"] = mesh.num_vertices();
    auto& faces = j["faces"] = nlohmann::json::array();
    for (const auto& f : mesh.faces) faces.push_back({f[0], f[1], f[2]});
    j["edge_lengths"] = mesh.edge_length;
    if (weight) j["weight"] = std::vector<double>(weight->begin(), weight->end());
    std::ofstream out(path);
    if (!out) throw IOError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

std::pair<TriMesh, Cochain0> read_intrinsic_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot open " + path);
    nlohmann::json j;
    in >> j;
    if (j.value("type", "") != "intrinsic-trimesh") throw IOError("not an intrinsic mesh file");
    std::vector<std::array<int, 3>> faces;
    for (const auto& f : j.at("faces")) faces.push_back({f.at(0), f.at(1), f.at(2)});
    std::vector<double> lengths = j.at("edge_lengths").get<std::vector<double>>();
    TriMesh mesh = build_intrinsic_mesh(j.at("n_vertices"), faces, lengths);
    Cochain0 weight = Cochain0::Ones(mesh.num_vertices());
    if (j.contains("weight")) {
        auto w = j.at("weight").get<std::vector<double>>();
        if (static_cast<int>(w.size()) != mesh.num_vertices())
            throw IOError("weight length mismatch");
        weight = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
    }
    return {std::move(mesh), std::move(weight)};
}

} // namespace ghf
