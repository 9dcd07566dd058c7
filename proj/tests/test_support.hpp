#pragma once

// Shared test helpers: face/complex literals from token strings, a seeded
// generator for property tests, and slow reference oracles kept independent
// of the library code paths they are used to check.

#include <map>
#include <set>
#include <sstream>

#include "nsw/io.hpp"
#include "nsw/order_certificates.hpp"

namespace nsw_test {

using namespace nsw;

inline Face F(const std::string& tokens) {
    if (tokens.empty()) return Face();
    return parse_face_line(tokens);
}

inline SimplicialComplex C(const std::vector<std::string>& faces) {
    std::vector<Face> fs;
    for (const auto& s : faces) fs.push_back(F(s));
    return make_complex(fs);
}

inline std::vector<Face> faces_of(const std::vector<std::string>& lines) {
    std::vector<Face> fs;
    for (const auto& s : lines) fs.push_back(F(s));
    return fs;
}

// deterministic generator for property tests
struct TestRng {
    std::uint64_t seed;
    std::uint64_t ctr = 0;
    std::uint64_t next() { return splitmix64_at(seed, ctr++); }
    std::size_t below(std::size_t n) { return std::size_t(next() % n); }
};

// ----------------------------------------------------------- slow oracles

/// Ridge multiplicities computed with plain sorted-vector sets, independent
/// of the bitset machinery.
inline std::map<std::vector<VertexId>, int> slow_ridge_counts(const std::vector<Face>& facets) {
    std::map<std::vector<VertexId>, int> counts;
    for (const Face& f : facets) {
        for (VertexId v : f) {
            std::vector<VertexId> ridge;
            for (VertexId w : f)
                if (!(w == v)) ridge.push_back(w);
            ++counts[ridge];
        }
    }
    return counts;
}

inline std::vector<Face> slow_boundary_facets(const std::vector<Face>& facets) {
    std::vector<Face> out;
    for (const auto& [ridge, cnt] : slow_ridge_counts(facets))
        if (cnt == 1) out.push_back(Face(ridge));
    return out;
}

/// Shelling check by direct subset enumeration: maintains the full face set
/// of the growing union and tests purity of each step's overlap literally.
inline bool slow_check_shelling(const std::vector<Face>& order) {
    std::set<std::vector<VertexId>> union_faces;
    auto add_all_subsets = [&](const Face& f) {
        const auto& vs = f.vertices();
        for (std::uint32_t m = 1; m < (std::uint32_t(1) << vs.size()); ++m) {
            std::vector<VertexId> sub;
            for (std::size_t j = 0; j < vs.size(); ++j)
                if ((m >> j) & 1) sub.push_back(vs[j]);
            union_faces.insert(sub);
        }
    };
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0) {
            const auto& vs = order[i].vertices();
            std::vector<std::vector<VertexId>> overlap;
            for (std::uint32_t m = 1; m < (std::uint32_t(1) << vs.size()); ++m) {
                std::vector<VertexId> sub;
                for (std::size_t j = 0; j < vs.size(); ++j)
                    if ((m >> j) & 1) sub.push_back(vs[j]);
                if (union_faces.count(sub)) overlap.push_back(sub);
            }
            if (overlap.empty()) return false;
            std::size_t want = vs.size() - 1;
            for (const auto& g : overlap) {
                bool maximal = true;
                for (const auto& h : overlap)
                    if (h.size() == g.size() + 1 &&
                        std::includes(h.begin(), h.end(), g.begin(), g.end()))
                        maximal = false;
                if (maximal && g.size() != want) return false;
            }
            bool has_top = false;
            for (const auto& g : overlap) has_top |= g.size() == want;
            if (!has_top) return false;
        }
        add_all_subsets(order[i]);
    }
    return true;
}

/// Sorted canonical facet lines, for readable failure output.
inline std::vector<std::string> facet_lines(const SimplicialComplex& c) {
    std::vector<std::string> lines;
    for (const Face& f : c.facets()) lines.push_back(face_line(f));
    std::sort(lines.begin(), lines.end());
    return lines;
}

}  // namespace nsw_test
