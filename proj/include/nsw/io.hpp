#pragma once

// Text formats.
//
// Facet list: optional header line `# nsw d=<d> n=<n>`, then one facet per
// line.  Vertex tokens are `p<path>.<index>`, `b<k>`, `apex`, sorted within
// a line by the vertex order and separated by single spaces; lines sorted
// lexicographically as strings; LF endings.  The parser rejects unsorted
// tokens and duplicate lines.
//
// Certificates are line-oriented: `S` opens a shelling block whose facet
// lines follow in order; `C`/`E` open and close a chain node; `G` opens a
// glue shelling inside a chain.  Inside a chain an `S` block must contain
// exactly one facet (a simplex leaf).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "certificate_types.hpp"
#include "grid_model.hpp"

namespace nsw {

// ------------------------------------------------------------------ tokens

inline VertexId parse_vertex_token(const std::string& tok) {
    auto fail = [&]() -> VertexId {
        throw std::invalid_argument("malformed vertex token '" + tok + "'");
    };
    auto parse_int = [&](const std::string& s) {
        if (s.empty() || s.size() > 5) fail();
        int v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') fail();
            v = v * 10 + (c - '0');
        }
        if (s[0] == '0') fail();
        return v;
    };
    if (tok == "apex") return VertexId::global_apex();
    if (tok.size() >= 2 && tok[0] == 'b') return VertexId::band_apex(parse_int(tok.substr(1)));
    if (tok.size() >= 4 && tok[0] == 'p') {
        auto dot = tok.find('.');
        if (dot == std::string::npos) fail();
        return VertexId::path_vertex(parse_int(tok.substr(1, dot - 1)),
                                     parse_int(tok.substr(dot + 1)));
    }
    return fail();
}

inline std::string face_line(const Face& f) {
    std::string out;
    for (VertexId v : f) {
        if (!out.empty()) out += ' ';
        out += v.token();
    }
    return out;
}

inline Face parse_face_line(const std::string& line) {
    if (line.empty()) throw std::invalid_argument("blank facet line");
    std::vector<VertexId> verts;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t next = line.find(' ', pos);
        std::string tok = line.substr(pos, next == std::string::npos ? next : next - pos);
        VertexId v = parse_vertex_token(tok);
        if (!verts.empty() && !(verts.back() < v))
            throw std::invalid_argument("unsorted or repeated vertex tokens in '" + line + "'");
        verts.push_back(v);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return Face(std::move(verts));
}

// -------------------------------------------------------------- facet list

inline std::string format_header(const GridParams& p) {
    return "# nsw d=" + std::to_string(p.d) + " n=" + std::to_string(p.n);
}

inline std::string write_complex_text(const SimplicialComplex& c,
                                      const std::optional<GridParams>& params) {
    std::vector<std::string> lines;
    lines.reserve(c.num_facets());
    for (const Face& f : c.facets()) lines.push_back(face_line(f));
    std::sort(lines.begin(), lines.end());
    std::string out;
    if (params) out += format_header(*params) + "\n";
    for (const std::string& l : lines) out += l + "\n";
    return out;
}

struct ParsedComplex {
    SimplicialComplex complex;
    std::optional<GridParams> params;
};

inline std::optional<GridParams> parse_header(const std::string& line) {
    int d = 0, n = 0;
    if (std::sscanf(line.c_str(), "# nsw d=%d n=%d", &d, &n) == 2) return GridParams(d, n);
    return std::nullopt;
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

inline ParsedComplex parse_complex_text(const std::string& text) {
    ParsedComplex out;
    std::vector<std::string> lines = split_lines(text);
    std::size_t start = 0;
    if (!lines.empty() && lines[0].rfind("# nsw", 0) == 0) {
        out.params = parse_header(lines[0]);
        if (!out.params) throw std::invalid_argument("malformed header line");
        start = 1;
    }
    std::vector<Face> faces;
    std::unordered_set<std::string> seen;
    for (std::size_t i = start; i < lines.size(); ++i) {
        if (!seen.insert(lines[i]).second)
            throw std::invalid_argument("duplicate facet line '" + lines[i] + "'");
        faces.push_back(parse_face_line(lines[i]));
    }
    out.complex = make_complex(faces);
    return out;
}

// ------------------------------------------------------------ certificates

inline std::string write_shelling_text(const ShellingOrder& sh,
                                       const std::optional<GridParams>& params) {
    std::string out;
    if (params) out += format_header(*params) + "\n";
    out += "S\n";
    for (const Face& f : sh.order) out += face_line(f) + "\n";
    return out;
}

namespace detail {
inline void write_tree_rec(const ConstructibilityTree& t, std::string& out) {
    if (t.is_leaf) {
        out += "S\n" + face_line(t.leaf) + "\n";
        return;
    }
    out += "C\n";
    for (std::size_t i = 0; i < t.blocks.size(); ++i) {
        if (i > 0) {
            out += "G\n";
            for (const Face& f : t.glues[i - 1].order) out += face_line(f) + "\n";
        }
        write_tree_rec(t.blocks[i], out);
    }
    out += "E\n";
}
}  // namespace detail

inline std::string write_tree_text(const ConstructibilityTree& t,
                                   const std::optional<GridParams>& params) {
    std::string out;
    if (params) out += format_header(*params) + "\n";
    detail::write_tree_rec(t, out);
    return out;
}

struct ParsedCertificate {
    bool is_tree = false;
    std::vector<Face> shelling;  // top-level S block
    ConstructibilityTree tree;
    std::optional<GridParams> params;
};

namespace detail {

struct CertParser {
    const std::vector<std::string>& lines;
    std::size_t pos = 0;

    bool done() const { return pos >= lines.size(); }
    const std::string& peek() const { return lines[pos]; }

    static bool is_directive(const std::string& l) {
        return l == "S" || l == "C" || l == "E" || l == "G";
    }

    std::vector<Face> facet_lines() {
        std::vector<Face> out;
        while (!done() && !is_directive(peek())) {
            out.push_back(parse_face_line(peek()));
            ++pos;
        }
        return out;
    }

    ConstructibilityTree node() {
        if (done()) throw std::invalid_argument("certificate ends where a node was expected");
        if (peek() == "S") {
            ++pos;
            std::vector<Face> f = facet_lines();
            if (f.size() != 1)
                throw std::invalid_argument("a leaf block must contain exactly one facet");
            return ConstructibilityTree::make_leaf(f.front());
        }
        if (peek() != "C") throw std::invalid_argument("expected S or C, got '" + peek() + "'");
        ++pos;
        std::vector<ConstructibilityTree> blocks;
        std::vector<ShellingOrder> glues;
        blocks.push_back(node());
        for (;;) {
            if (done()) throw std::invalid_argument("unterminated chain node");
            if (peek() == "E") {
                ++pos;
                break;
            }
            if (peek() != "G")
                throw std::invalid_argument("expected G or E inside a chain, got '" + peek() + "'");
            ++pos;
            std::vector<Face> gf = facet_lines();
            if (gf.empty()) throw std::invalid_argument("empty glue shelling");
            glues.push_back(make_shelling(gf));
            blocks.push_back(node());
        }
        return ConstructibilityTree::make_chain(std::move(blocks), std::move(glues));
    }
};

}  // namespace detail

inline ParsedCertificate parse_certificate_text(const std::string& text) {
    ParsedCertificate out;
    std::vector<std::string> lines = split_lines(text);
    std::size_t start = 0;
    if (!lines.empty() && lines[0].rfind("# nsw", 0) == 0) {
        out.params = parse_header(lines[0]);
        if (!out.params) throw std::invalid_argument("malformed header line");
        start = 1;
    }
    std::vector<std::string> body(lines.begin() + std::ptrdiff_t(start), lines.end());
    detail::CertParser parser{body};
    if (parser.done()) throw std::invalid_argument("empty certificate");
    if (parser.peek() == "S") {
        ++parser.pos;
        out.shelling = parser.facet_lines();
        if (!parser.done()) {
            // a lone facet after S would have been consumed; anything else
            // means this is really a tree rooted at an S leaf
            throw std::invalid_argument("trailing content after shelling block");
        }
        out.is_tree = false;
        return out;
    }
    out.tree = parser.node();
    if (!parser.done()) throw std::invalid_argument("trailing content after certificate");
    out.is_tree = true;
    return out;
}

// ------------------------------------------------------------------- files

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Write-temp-then-rename; never leaves a partial file at the target path.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace nsw
