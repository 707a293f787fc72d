#include "wavejets/io.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace wavejets::io {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void check_finite(const Eigen::Vector3d& p, size_t line) {
    if (!p.allFinite()) {
        throw ParseError("non-finite coordinate at line " + std::to_string(line));
    }
}

PointCloud read_xyz(std::istream& is) {
    PointCloud cloud;
    std::string line;
    size_t lineno = 0;
    bool normals_seen = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        Eigen::Vector3d p, n;
        if (!(ls >> p.x() >> p.y() >> p.z())) {
            throw ParseError("malformed xyz line " + std::to_string(lineno));
        }
        check_finite(p, lineno);
        if (ls >> n.x() >> n.y() >> n.z()) {
            check_finite(n, lineno);
            normals_seen = true;
            cloud.normals.push_back(n);
        } else if (normals_seen) {
            throw ParseError("missing normal at line " + std::to_string(lineno));
        }
        cloud.positions.push_back(p);
    }
    if (!cloud.normals.empty() && cloud.normals.size() != cloud.positions.size()) {
        throw ParseError("inconsistent normal count in xyz file");
    }
    return cloud;
}

enum class PlyType { I8, U8, I16, U16, I32, U32, F32, F64 };

size_t ply_type_size(PlyType t) {
    switch (t) {
        case PlyType::I8:
        case PlyType::U8: return 1;
        case PlyType::I16:
        case PlyType::U16: return 2;
        case PlyType::I32:
        case PlyType::U32:
        case PlyType::F32: return 4;
        case PlyType::F64: return 8;
    }
    return 0;
}

PlyType parse_ply_type(const std::string& s, size_t lineno) {
    if (s == "char" || s == "int8") return PlyType::I8;
    if (s == "uchar" || s == "uint8") return PlyType::U8;
    if (s == "short" || s == "int16") return PlyType::I16;
    if (s == "ushort" || s == "uint16") return PlyType::U16;
    if (s == "int" || s == "int32") return PlyType::I32;
    if (s == "uint" || s == "uint32") return PlyType::U32;
    if (s == "float" || s == "float32") return PlyType::F32;
    if (s == "double" || s == "float64") return PlyType::F64;
    throw ParseError("unknown PLY property type '" + s + "' at header line " +
                     std::to_string(lineno));
}

struct PlyProperty {
    std::string name;
    PlyType type = PlyType::F32;
    bool is_list = false;
    PlyType count_type = PlyType::U8;
};

struct PlyElement {
    std::string name;
    size_t count = 0;
    std::vector<PlyProperty> properties;
};

double read_binary_scalar(std::istream& is, PlyType t) {
    std::array<char, 8> buf;
    is.read(buf.data(), static_cast<std::streamsize>(ply_type_size(t)));
    if (!is) throw ParseError("unexpected end of PLY binary data at byte offset " +
                              std::to_string(is.tellg()));
    switch (t) {
        case PlyType::I8: return static_cast<int8_t>(buf[0]);
        case PlyType::U8: return static_cast<uint8_t>(buf[0]);
        case PlyType::I16: { int16_t v; std::memcpy(&v, buf.data(), 2); return v; }
        case PlyType::U16: { uint16_t v; std::memcpy(&v, buf.data(), 2); return v; }
        case PlyType::I32: { int32_t v; std::memcpy(&v, buf.data(), 4); return v; }
        case PlyType::U32: { uint32_t v; std::memcpy(&v, buf.data(), 4); return v; }
        case PlyType::F32: { float v; std::memcpy(&v, buf.data(), 4); return v; }
        case PlyType::F64: { double v; std::memcpy(&v, buf.data(), 8); return v; }
    }
    return 0.0;
}

PointCloud read_ply(std::istream& is) {
    std::string line;
    size_t lineno = 0;
    auto next_line = [&]() -> std::string {
        if (!std::getline(is, line)) {
            throw ParseError("unexpected end of PLY header at line " +
                             std::to_string(lineno));
        }
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    };

    if (next_line() != "ply") throw ParseError("not a PLY file (missing magic)");
    bool binary = false;
    bool format_seen = false;
    std::vector<PlyElement> elements;

    while (true) {
        const std::string l = next_line();
        std::istringstream ls(l);
        std::string tok;
        ls >> tok;
        if (tok == "comment" || tok == "obj_info" || tok.empty()) continue;
        if (tok == "format") {
            std::string fmt, version;
            ls >> fmt >> version;
            if (fmt == "ascii") binary = false;
            else if (fmt == "binary_little_endian") binary = true;
            else throw ParseError("unsupported PLY format '" + fmt + "'");
            format_seen = true;
        } else if (tok == "element") {
            PlyElement e;
            ls >> e.name >> e.count;
            elements.push_back(e);
        } else if (tok == "property") {
            if (elements.empty()) {
                throw ParseError("property before element at header line " +
                                 std::to_string(lineno));
            }
            PlyProperty p;
            std::string type;
            ls >> type;
            if (type == "list") {
                std::string count_type, value_type;
                ls >> count_type >> value_type >> p.name;
                p.is_list = true;
                p.count_type = parse_ply_type(count_type, lineno);
                p.type = parse_ply_type(value_type, lineno);
            } else {
                p.type = parse_ply_type(type, lineno);
                ls >> p.name;
            }
            elements.back().properties.push_back(p);
        } else if (tok == "end_header") {
            break;
        } else {
            throw ParseError("unknown PLY header keyword '" + tok +
                             "' at line " + std::to_string(lineno));
        }
    }
    if (!format_seen) throw ParseError("PLY header missing format line");

    const PlyElement* vertex = nullptr;
    for (const auto& e : elements) {
        if (e.name == "vertex") { vertex = &e; break; }
    }
    if (!vertex) throw ParseError("PLY file has no vertex element");
    if (&elements.front() != vertex) {
        throw ParseError("unsupported PLY layout: vertex is not the first element");
    }

    int ix = -1, iy = -1, iz = -1, inx = -1, iny = -1, inz = -1;
    for (int i = 0; i < static_cast<int>(vertex->properties.size()); ++i) {
        const auto& name = vertex->properties[i].name;
        if (name == "x") ix = i;
        else if (name == "y") iy = i;
        else if (name == "z") iz = i;
        else if (name == "nx") inx = i;
        else if (name == "ny") iny = i;
        else if (name == "nz") inz = i;
    }
    if (ix < 0 || iy < 0 || iz < 0) {
        throw ParseError("PLY vertex element lacks x/y/z properties");
    }
    const bool has_normals = inx >= 0 && iny >= 0 && inz >= 0;

    PointCloud cloud;
    cloud.positions.reserve(vertex->count);
    std::vector<double> values(vertex->properties.size());

    for (size_t v = 0; v < vertex->count; ++v) {
        if (binary) {
            for (size_t p = 0; p < vertex->properties.size(); ++p) {
                const auto& prop = vertex->properties[p];
                if (prop.is_list) {
                    const auto count =
                        static_cast<size_t>(read_binary_scalar(is, prop.count_type));
                    for (size_t j = 0; j < count; ++j) {
                        read_binary_scalar(is, prop.type);
                    }
                    values[p] = 0.0;
                } else {
                    values[p] = read_binary_scalar(is, prop.type);
                }
            }
        } else {
            const std::string l = next_line();
            std::istringstream ls(l);
            for (size_t p = 0; p < vertex->properties.size(); ++p) {
                const auto& prop = vertex->properties[p];
                if (prop.is_list) {
                    size_t count;
                    if (!(ls >> count)) {
                        throw ParseError("malformed PLY vertex at line " +
                                         std::to_string(lineno));
                    }
                    double dummy;
                    for (size_t j = 0; j < count; ++j) ls >> dummy;
                    values[p] = 0.0;
                } else if (!(ls >> values[p])) {
                    throw ParseError("malformed PLY vertex at line " +
                                     std::to_string(lineno));
                }
            }
        }
        Eigen::Vector3d pos(values[ix], values[iy], values[iz]);
        check_finite(pos, lineno);
        cloud.positions.push_back(pos);
        if (has_normals) {
            cloud.normals.emplace_back(values[inx], values[iny], values[inz]);
        }
    }
    return cloud;
}

std::ofstream open_out(const std::string& path, bool binary) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    return os;
}

} // namespace

PointCloud read_cloud(const std::string& path) {
    const bool ply = ends_with(path, ".ply") || ends_with(path, ".PLY");
    std::ifstream is(path, ply ? std::ios::binary : std::ios::in);
    if (!is) throw ParseError("cannot open file: " + path);
    return ply ? read_ply(is) : read_xyz(is);
}

void write_xyz(const std::string& path, const PointCloud& cloud) {
    auto os = open_out(path, false);
    os.precision(17);
    for (size_t i = 0; i < cloud.size(); ++i) {
        const auto& p = cloud.positions[i];
        os << p.x() << ' ' << p.y() << ' ' << p.z();
        if (cloud.has_normals()) {
            const auto& n = cloud.normals[i];
            os << ' ' << n.x() << ' ' << n.y() << ' ' << n.z();
        }
        os << '\n';
    }
}

void write_ply(const std::string& path, const PointCloud& cloud, bool binary) {
    auto os = open_out(path, binary);
    os << "ply\n"
       << (binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n")
       << "element vertex " << cloud.size() << "\n"
       << "property double x\nproperty double y\nproperty double z\n";
    if (cloud.has_normals()) {
        os << "property double nx\nproperty double ny\nproperty double nz\n";
    }
    os << "end_header\n";
    os.precision(17);
    for (size_t i = 0; i < cloud.size(); ++i) {
        std::array<double, 6> row{cloud.positions[i].x(), cloud.positions[i].y(),
                                  cloud.positions[i].z(), 0.0, 0.0, 0.0};
        size_t count = 3;
        if (cloud.has_normals()) {
            row[3] = cloud.normals[i].x();
            row[4] = cloud.normals[i].y();
            row[5] = cloud.normals[i].z();
            count = 6;
        }
        if (binary) {
            os.write(reinterpret_cast<const char*>(row.data()),
                     static_cast<std::streamsize>(count * sizeof(double)));
        } else {
            for (size_t j = 0; j < count; ++j) {
                os << row[j] << (j + 1 == count ? '\n' : ' ');
            }
        }
    }
}

void write_directions(const std::string& path,
                      const std::vector<DirectionRecord>& records) {
    auto os = open_out(path, false);
    os.precision(17);
    os << "# point_index px py pz order kind angle dx dy dz eigenvalue\n";
    for (const auto& r : records) {
        const auto& d = r.direction;
        os << r.point_index << ' ' << r.position.x() << ' ' << r.position.y()
           << ' ' << r.position.z() << ' ' << d.order << ' '
           << (d.kind == ExtremumKind::Maximum ? "max" : "min") << ' ' << d.angle
           << ' ' << d.direction3d.x() << ' ' << d.direction3d.y() << ' '
           << d.direction3d.z() << ' ' << d.eigenvalue << '\n';
    }
}

void write_direction_segments_ply(const std::string& path,
                                  const std::vector<DirectionRecord>& records,
                                  double scale) {
    // palette by order, matching the figures' convention
    auto color = [](int order) -> std::array<uint8_t, 3> {
        switch (order) {
            case 2: return {0, 0, 255};     // blue
            case 3: return {0, 255, 0};     // green
            case 4: return {0, 255, 255};   // cyan
            case 5: return {255, 105, 180}; // pink
            case 6: return {139, 69, 19};   // brown
            default: return {128, 128, 128};
        }
    };

    auto os = open_out(path, false);
    os << "ply\nformat ascii 1.0\n"
       << "element vertex " << 2 * records.size() << "\n"
       << "property double x\nproperty double y\nproperty double z\n"
       << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
       << "element edge " << records.size() << "\n"
       << "property int vertex1\nproperty int vertex2\nend_header\n";
    os.precision(17);
    for (const auto& r : records) {
        const auto& d = r.direction;
        const double len =
            scale * std::pow(std::abs(d.eigenvalue), 1.0 / d.order);
        const Eigen::Vector3d tip = r.position + len * d.direction3d;
        const auto c = color(d.order);
        os << r.position.x() << ' ' << r.position.y() << ' ' << r.position.z()
           << ' ' << int(c[0]) << ' ' << int(c[1]) << ' ' << int(c[2]) << '\n';
        os << tip.x() << ' ' << tip.y() << ' ' << tip.z() << ' ' << int(c[0])
           << ' ' << int(c[1]) << ' ' << int(c[2]) << '\n';
    }
    for (size_t i = 0; i < records.size(); ++i) {
        os << 2 * i << ' ' << 2 * i + 1 << '\n';
    }
}

} // namespace wavejets::io
