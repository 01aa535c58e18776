#include "circlekit/mesh_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace circlekit {

bool MeshFile::operator==(const MeshFile& o) const {
    return kind == o.kind && vertex_count == o.vertex_count && with_positions == o.with_positions &&
           positions == o.positions && faces == o.faces && colors == o.colors && edge_labels == o.edge_labels;
}

const char* color_token(VertexColor c) {
    switch (c) {
        case VertexColor::none: return "none";
        case VertexColor::black: return "black";
        case VertexColor::white: return "white";
        case VertexColor::white_c: return "wc";
        case VertexColor::white_s: return "ws";
    }
    return "none";
}

VertexColor parse_color_token(const std::string& tok, int line) {
    if (tok == "none") return VertexColor::none;
    if (tok == "black") return VertexColor::black;
    if (tok == "white") return VertexColor::white;
    if (tok == "wc") return VertexColor::white_c;
    if (tok == "ws") return VertexColor::white_s;
    throw MeshParseError(line, "unknown color token '" + tok + "'");
}

namespace {

struct LineReader {
    std::istream& in;
    int line = 0;
    bool next(std::string& out) {
        while (std::getline(in, out)) {
            ++line;
            size_t h = out.find('#');
            if (h != std::string::npos) out.erase(h);
            size_t b = out.find_last_not_of(" \t\r");
            if (b == std::string::npos) continue;  // blank/comment line
            out.erase(b + 1);
            return true;
        }
        return false;
    }
};

double parse_double(const std::string& tok, int line) {
    size_t used = 0;
    double v;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw MeshParseError(line, "expected a number, got '" + tok + "'");
    }
    if (used != tok.size()) throw MeshParseError(line, "trailing characters in number '" + tok + "'");
    return v;
}

long parse_int(const std::string& tok, int line) {
    size_t used = 0;
    long v;
    try {
        v = std::stol(tok, &used);
    } catch (const std::exception&) {
        throw MeshParseError(line, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) throw MeshParseError(line, "trailing characters in integer '" + tok + "'");
    return v;
}

std::vector<std::string> tokens_of(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> t;
    std::string tok;
    while (is >> tok) t.push_back(tok);
    return t;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

MeshFile read_mesh_text(std::istream& in) {
    LineReader rd{in};
    std::string line;
    MeshFile m;

    if (!rd.next(line)) throw MeshParseError(rd.line, "empty document");
    {
        auto t = tokens_of(line);
        if (t.size() != 3 || t[0] != "circlekit" || t[1] != "mesh" || t[2] != "1")
            throw MeshParseError(rd.line, "expected header 'circlekit mesh 1'");
    }
    if (!rd.next(line)) throw MeshParseError(rd.line, "missing 'kind'");
    {
        auto t = tokens_of(line);
        if (t.size() != 2 || t[0] != "kind") throw MeshParseError(rd.line, "expected 'kind tri|quad'");
        if (t[1] == "tri")
            m.kind = MeshFile::Kind::tri;
        else if (t[1] == "quad")
            m.kind = MeshFile::Kind::quad;
        else
            throw MeshParseError(rd.line, "unknown kind '" + t[1] + "'");
    }
    if (!rd.next(line)) throw MeshParseError(rd.line, "missing 'vertices'");
    {
        auto t = tokens_of(line);
        if (t.size() != 4 || t[0] != "vertices" || t[2] != "positions")
            throw MeshParseError(rd.line, "expected 'vertices N positions 0|1'");
        m.vertex_count = static_cast<int>(parse_int(t[1], rd.line));
        if (m.vertex_count < 0) throw MeshParseError(rd.line, "negative vertex count");
        m.with_positions = parse_int(t[3], rd.line) != 0;
    }
    if (m.with_positions) {
        m.positions.reserve(m.vertex_count);
        for (int i = 0; i < m.vertex_count; ++i) {
            if (!rd.next(line)) throw MeshParseError(rd.line, "unexpected end of file in vertex block");
            auto t = tokens_of(line);
            if (t.size() != 4 || t[0] != "v") throw MeshParseError(rd.line, "expected 'v x y z'");
            m.positions.push_back(
                {parse_double(t[1], rd.line), parse_double(t[2], rd.line), parse_double(t[3], rd.line)});
        }
    }
    if (!rd.next(line)) throw MeshParseError(rd.line, "missing 'faces'");
    {
        auto t = tokens_of(line);
        if (t.size() != 2 || t[0] != "faces") throw MeshParseError(rd.line, "expected 'faces M'");
        const long nf = parse_int(t[1], rd.line);
        const size_t arity = m.kind == MeshFile::Kind::tri ? 3 : 4;
        for (long i = 0; i < nf; ++i) {
            if (!rd.next(line)) throw MeshParseError(rd.line, "unexpected end of file in face block");
            auto ft = tokens_of(line);
            if (ft.empty() || ft[0] != "f") throw MeshParseError(rd.line, "expected a face line");
            if (ft.size() - 1 != arity)
                throw MeshParseError(rd.line, "face with " + std::to_string(ft.size() - 1) + " sides, expected " +
                                                  std::to_string(arity));
            std::vector<int> face;
            for (size_t k = 1; k < ft.size(); ++k) {
                long v = parse_int(ft[k], rd.line);
                if (v < 0 || v >= m.vertex_count) throw MeshParseError(rd.line, "vertex index out of range");
                face.push_back(static_cast<int>(v));
            }
            m.faces.push_back(std::move(face));
        }
    }
    while (rd.next(line)) {
        auto t = tokens_of(line);
        if (t[0] == "colors") {
            if (t.size() != 2 || parse_int(t[1], rd.line) != m.vertex_count)
                throw MeshParseError(rd.line, "colors block must list every vertex");
            for (int i = 0; i < m.vertex_count; ++i) {
                if (!rd.next(line)) throw MeshParseError(rd.line, "unexpected end of file in color block");
                auto ct = tokens_of(line);
                if (ct.size() != 2 || ct[0] != "c") throw MeshParseError(rd.line, "expected 'c <color>'");
                m.colors.push_back(parse_color_token(ct[1], rd.line));
            }
        } else if (t[0] == "elabels") {
            if (t.size() != 2) throw MeshParseError(rd.line, "expected 'elabels K'");
            const long k = parse_int(t[1], rd.line);
            for (long i = 0; i < k; ++i) {
                if (!rd.next(line)) throw MeshParseError(rd.line, "unexpected end of file in label block");
                auto et = tokens_of(line);
                if (et.size() != 4 || et[0] != "e" || (et[3] != "+" && et[3] != "-"))
                    throw MeshParseError(rd.line, "expected 'e i j +|-'");
                MeshFile::EdgeLabel el;
                el.a = static_cast<int>(parse_int(et[1], rd.line));
                el.b = static_cast<int>(parse_int(et[2], rd.line));
                el.sign = et[3] == "+" ? +1 : -1;
                if (el.a < 0 || el.a >= m.vertex_count || el.b < 0 || el.b >= m.vertex_count)
                    throw MeshParseError(rd.line, "edge label index out of range");
                m.edge_labels.push_back(el);
            }
        } else if (t[0] == "end") {
            break;
        } else {
            throw MeshParseError(rd.line, "unknown block '" + t[0] + "'");
        }
    }
    return m;
}

MeshFile read_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_mesh_text(in);
}

std::string write_mesh_text(const MeshFile& m) {
    std::ostringstream os;
    os << "circlekit mesh 1\n";
    os << "kind " << (m.kind == MeshFile::Kind::tri ? "tri" : "quad") << "\n";
    os << "vertices " << m.vertex_count << " positions " << (m.with_positions ? 1 : 0) << "\n";
    if (m.with_positions)
        for (const Point3& p : m.positions)
            os << "v " << format_g17(p.x) << " " << format_g17(p.y) << " " << format_g17(p.z) << "\n";
    os << "faces " << m.faces.size() << "\n";
    for (const auto& f : m.faces) {
        os << "f";
        for (int v : f) os << " " << v;
        os << "\n";
    }
    if (!m.colors.empty()) {
        os << "colors " << m.colors.size() << "\n";
        for (VertexColor c : m.colors) os << "c " << color_token(c) << "\n";
    }
    if (!m.edge_labels.empty()) {
        os << "elabels " << m.edge_labels.size() << "\n";
        for (const auto& el : m.edge_labels)
            os << "e " << el.a << " " << el.b << " " << (el.sign > 0 ? "+" : "-") << "\n";
    }
    os << "end\n";
    return os.str();
}

void write_mesh(const std::string& path, const MeshFile& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << write_mesh_text(m);
}

MeshFile to_mesh_file(const SimplicialSurface& s) {
    MeshFile m;
    m.kind = MeshFile::Kind::tri;
    m.vertex_count = s.vertex_count();
    m.with_positions = s.has_positions();
    m.positions = s.positions();
    for (const auto& f : s.faces()) m.faces.push_back({f[0], f[1], f[2]});
    m.colors = s.colors;
    return m;
}

MeshFile to_mesh_file(const QuadGraph& q) {
    MeshFile m;
    m.kind = MeshFile::Kind::quad;
    m.vertex_count = q.vertex_count();
    m.with_positions = q.has_positions();
    m.positions = q.positions;
    for (const auto& f : q.faces()) m.faces.push_back({f[0], f[1], f[2], f[3]});
    m.colors = q.colors;
    return m;
}

SimplicialSurface to_simplicial(const MeshFile& m) {
    if (m.kind != MeshFile::Kind::tri) throw std::invalid_argument("to_simplicial: document is not a triangle mesh");
    std::vector<std::array<int, 3>> faces;
    for (const auto& f : m.faces) faces.push_back({f[0], f[1], f[2]});
    SimplicialSurface s = m.with_positions ? SimplicialSurface(m.positions, std::move(faces))
                                           : SimplicialSurface(m.vertex_count, std::move(faces));
    s.colors = m.colors;
    return s;
}

QuadGraph to_quadgraph(const MeshFile& m) {
    if (m.kind != MeshFile::Kind::quad) throw std::invalid_argument("to_quadgraph: document is not a quad mesh");
    std::vector<std::array<int, 4>> faces;
    for (const auto& f : m.faces) faces.push_back({f[0], f[1], f[2], f[3]});
    QuadGraph q(m.vertex_count, std::move(faces));
    q.colors = m.colors;
    q.positions = m.positions;
    return q;
}

void write_obj(const std::string& path, const std::vector<Point3>& positions,
               const std::vector<std::vector<int>>& faces) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    for (const Point3& p : positions)
        out << "v " << format_g17(p.x) << " " << format_g17(p.y) << " " << format_g17(p.z) << "\n";
    for (const auto& f : faces) {
        out << "f";
        for (int v : f) out << " " << v + 1;
        out << "\n";
    }
}

void write_obj(const std::string& path, const SimplicialSurface& s) {
    std::vector<std::vector<int>> faces;
    for (const auto& f : s.faces()) faces.push_back({f[0], f[1], f[2]});
    write_obj(path, s.positions(), faces);
}

}  // namespace circlekit
