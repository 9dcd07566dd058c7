#pragma once

// Minimal simplicial-complex kernel.  Complexes are stored as their facet
// sets; faces are encoded as fixed-width bitsets over a per-complex vertex
// table sorted in the global vertex order, so containment and intersection
// are word operations and iteration order is deterministic.

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace nsw {

// ------------------------------------------------------------------ vertex

/// Vertex label: a path vertex a_i^(l) on one of the d paths, the apex of a
/// band, or the single global apex.  Total order: path vertices (by path,
/// then index) < band apexes (by band) < global apex.
class VertexId {
public:
    enum class Kind : std::uint8_t { path = 0, band_apex = 1, global_apex = 2 };

    static VertexId path_vertex(int path, int index) {
        check_range(path, "path");
        check_range(index, "index");
        return VertexId(Kind::path, path, index);
    }
    static VertexId band_apex(int band) {
        check_range(band, "band");
        return VertexId(Kind::band_apex, band, 0);
    }
    static VertexId global_apex() { return VertexId(Kind::global_apex, 0, 0); }

    Kind kind() const { return kind_; }
    int path() const { return a_; }   // valid for Kind::path
    int index() const { return b_; }  // valid for Kind::path
    int band() const { return a_; }   // valid for Kind::band_apex

    /// Packed key preserving the total order.
    std::uint32_t key() const {
        return (std::uint32_t(kind_) << 30) | (std::uint32_t(a_) << 15) | std::uint32_t(b_);
    }

    friend bool operator==(VertexId x, VertexId y) { return x.key() == y.key(); }
    friend std::strong_ordering operator<=>(VertexId x, VertexId y) {
        return x.key() <=> y.key();
    }

    std::string token() const {
        switch (kind_) {
        case Kind::path: return "p" + std::to_string(a_) + "." + std::to_string(b_);
        case Kind::band_apex: return "b" + std::to_string(a_);
        default: return "apex";
        }
    }

private:
    VertexId(Kind k, int a, int b) : kind_(k), a_(std::uint16_t(a)), b_(std::uint16_t(b)) {}
    static void check_range(int v, const char* what) {
        if (v < 1 || v > 0x7FFF)
            throw std::invalid_argument(std::string("vertex ") + what + " out of range");
    }

    Kind kind_;
    std::uint16_t a_;
    std::uint16_t b_;
};

// -------------------------------------------------------------------- face

/// A face: strictly increasing sequence of vertices.  The empty face is
/// allowed and has dimension -1.
class Face {
public:
    Face() = default;
    explicit Face(std::vector<VertexId> verts) : v_(std::move(verts)) {
        std::sort(v_.begin(), v_.end());
        if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
            throw std::invalid_argument("duplicate vertex in face");
    }
    Face(std::initializer_list<VertexId> verts) : Face(std::vector<VertexId>(verts)) {}

    int dim() const { return int(v_.size()) - 1; }
    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }
    const std::vector<VertexId>& vertices() const { return v_; }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

    bool has_vertex(VertexId v) const {
        return std::binary_search(v_.begin(), v_.end(), v);
    }
    bool subset_of(const Face& o) const {
        return std::includes(o.v_.begin(), o.v_.end(), v_.begin(), v_.end());
    }

    Face with(VertexId v) const {
        std::vector<VertexId> w(v_);
        w.push_back(v);
        return Face(std::move(w));
    }
    Face without(VertexId v) const {
        std::vector<VertexId> w;
        w.reserve(v_.size());
        for (VertexId x : v_)
            if (!(x == v)) w.push_back(x);
        return Face(std::move(w));
    }

    friend Face face_intersection(const Face& a, const Face& b) {
        std::vector<VertexId> w;
        std::set_intersection(a.v_.begin(), a.v_.end(), b.v_.begin(), b.v_.end(),
                              std::back_inserter(w));
        return Face(std::move(w));
    }
    friend Face face_union(const Face& a, const Face& b) {
        std::vector<VertexId> w;
        std::set_union(a.v_.begin(), a.v_.end(), b.v_.begin(), b.v_.end(),
                       std::back_inserter(w));
        return Face(std::move(w));
    }
    friend Face face_minus(const Face& a, const Face& b) {
        std::vector<VertexId> w;
        std::set_difference(a.v_.begin(), a.v_.end(), b.v_.begin(), b.v_.end(),
                            std::back_inserter(w));
        return Face(std::move(w));
    }

    friend bool operator==(const Face& a, const Face& b) { return a.v_ == b.v_; }
    // lexicographic on the sorted vertex sequences; deterministic everywhere
    friend std::strong_ordering operator<=>(const Face& a, const Face& b) {
        return std::lexicographical_compare_three_way(a.v_.begin(), a.v_.end(),
                                                      b.v_.begin(), b.v_.end());
    }

private:
    std::vector<VertexId> v_;
};

// ------------------------------------------------------------------ bitset

/// Fixed-width vertex bitset (256 bits), indices into a complex's vertex
/// table.  Wide enough for every supported parameter range.
class VertexSet {
public:
    static constexpr int capacity = 256;

    void set(int i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void clear(int i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    bool none() const { return !(w_[0] | w_[1] | w_[2] | w_[3]); }
    int count() const {
        int c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }
    bool subset_of(const VertexSet& o) const {
        for (int i = 0; i < 4; ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    VertexSet operator&(const VertexSet& o) const {
        VertexSet r;
        for (int i = 0; i < 4; ++i) r.w_[i] = w_[i] & o.w_[i];
        return r;
    }
    VertexSet operator|(const VertexSet& o) const {
        VertexSet r;
        for (int i = 0; i < 4; ++i) r.w_[i] = w_[i] | o.w_[i];
        return r;
    }

    template <typename Fn>
    void for_each_bit(Fn&& fn) const {
        for (int i = 0; i < 4; ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                int b = std::countr_zero(w);
                fn(i * 64 + b);
                w &= w - 1;
            }
        }
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.w_ == b.w_; }

    std::size_t hash() const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto w : w_) {
            h ^= w;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

private:
    std::array<std::uint64_t, 4> w_{};
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

// ----------------------------------------------------------------- complex

struct ComplexStats {
    std::vector<std::int64_t> f_vector;  // f_vector[i] = number of i-faces
    std::int64_t euler = 0;
    int dim = -2;
    bool is_pure = true;
};

/// A simplicial complex given by its inclusion-maximal faces.  Immutable
/// after construction; all operations return new values.
///
/// Dimension conventions: the empty complex (no faces at all) has dim -2;
/// the complex whose only facet is the empty face has dim -1.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    int dim() const { return facets_.empty() ? -2 : facets_.back().dim(); }
    bool is_empty_complex() const { return facets_.empty(); }
    std::size_t num_facets() const { return facets_.size(); }
    const std::vector<Face>& facets() const { return facets_; }
    const std::vector<VertexId>& support() const { return verts_; }

    bool is_pure() const {
        for (const Face& f : facets_)
            if (f.dim() != facets_.front().dim()) return false;
        return true;
    }

    /// Membership: F is a face iff it is contained in some facet.
    bool contains(const Face& f) const {
        if (facets_.empty()) return false;
        auto enc = encode(f);
        if (!enc) return false;
        for (const VertexSet& s : bits_)
            if (enc->subset_of(s)) return true;
        return false;
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.facets_ == b.facets_;
    }

    // internal encoded view, used by the heavier algorithms
    const std::vector<VertexSet>& facet_bits() const { return bits_; }
    std::optional<VertexSet> encode(const Face& f) const {
        VertexSet s;
        for (VertexId v : f) {
            auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
            if (it == verts_.end() || !(*it == v)) return std::nullopt;
            s.set(int(it - verts_.begin()));
        }
        return s;
    }
    Face decode(const VertexSet& s) const {
        std::vector<VertexId> w;
        s.for_each_bit([&](int i) { w.push_back(verts_[i]); });
        return Face(std::move(w));
    }

    friend SimplicialComplex make_complex(const std::vector<Face>& generators);

private:
    std::vector<VertexId> verts_;  // sorted support
    std::vector<Face> facets_;     // maximal generators, sorted; dims ascending then lex
    std::vector<VertexSet> bits_;  // facets_ encoded over verts_
};

/// Build a complex from arbitrary generators; keeps the inclusion-maximal
/// ones.  The empty generator set gives the empty complex (dim -2).
inline SimplicialComplex make_complex(const std::vector<Face>& generators) {
    SimplicialComplex c;
    if (generators.empty()) return c;

    std::vector<Face> gen(generators);
    std::sort(gen.begin(), gen.end());
    gen.erase(std::unique(gen.begin(), gen.end()), gen.end());

    std::vector<VertexId> verts;
    for (const Face& f : gen)
        for (VertexId v : f) verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (verts.size() > VertexSet::capacity)
        throw std::invalid_argument("complex support exceeds vertex-set capacity");
    c.verts_ = std::move(verts);

    std::vector<VertexSet> enc;
    enc.reserve(gen.size());
    for (const Face& f : gen) enc.push_back(*c.encode(f));

    // maximality filter; scan larger faces first
    std::vector<std::size_t> order(gen.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return gen[a].size() > gen[b].size();
    });
    std::vector<VertexSet> kept_bits;
    std::vector<Face> kept;
    for (std::size_t idx : order) {
        bool dominated = false;
        for (const VertexSet& k : kept_bits)
            if (enc[idx].subset_of(k)) {
                dominated = true;
                break;
            }
        if (!dominated) {
            kept_bits.push_back(enc[idx]);
            kept.push_back(gen[idx]);
        }
    }

    std::vector<std::size_t> fo(kept.size());
    for (std::size_t i = 0; i < fo.size(); ++i) fo[i] = i;
    std::sort(fo.begin(), fo.end(), [&](std::size_t a, std::size_t b) {
        if (kept[a].size() != kept[b].size()) return kept[a].size() < kept[b].size();
        return kept[a] < kept[b];
    });
    for (std::size_t i : fo) {
        c.facets_.push_back(kept[i]);
        c.bits_.push_back(kept_bits[i]);
    }
    return c;
}

inline SimplicialComplex simplex_complex(const Face& f) { return make_complex({f}); }

/// Join of two complexes on disjoint vertex sets: facets are all unions of a
/// facet of each.
inline SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
    {
        std::vector<VertexId> common;
        std::set_intersection(a.support().begin(), a.support().end(),
                              b.support().begin(), b.support().end(),
                              std::back_inserter(common));
        if (!common.empty()) throw std::invalid_argument("non-disjoint join");
    }
    std::vector<Face> out;
    out.reserve(a.num_facets() * b.num_facets());
    for (const Face& f : a.facets())
        for (const Face& g : b.facets()) out.push_back(face_union(f, g));
    return make_complex(out);
}

/// Cone over a complex with a new apex.
inline SimplicialComplex cone(const SimplicialComplex& a, VertexId apex) {
    if (std::binary_search(a.support().begin(), a.support().end(), apex))
        throw std::invalid_argument("cone apex already a vertex of the complex");
    std::vector<Face> out;
    out.reserve(a.num_facets());
    for (const Face& f : a.facets()) out.push_back(f.with(apex));
    return make_complex(out);
}

/// Boundary of a pure complex: the complex generated by the ridges lying in
/// exactly one facet.  Empty for a closed pseudomanifold.
inline SimplicialComplex boundary(const SimplicialComplex& a) {
    if (!a.is_pure() || a.dim() < 1)
        throw std::invalid_argument("boundary requires a pure complex of dim >= 1");
    std::unordered_map<VertexSet, int, VertexSetHash> ridge_count;
    for (const VertexSet& f : a.facet_bits()) {
        f.for_each_bit([&](int i) {
            VertexSet r = f;
            r.clear(i);
            ++ridge_count[r];
        });
    }
    std::vector<Face> out;
    for (const auto& [r, cnt] : ridge_count)
        if (cnt == 1) out.push_back(a.decode(r));
    return make_complex(out);
}

/// Intersection of complexes: all faces present in both, represented by the
/// maximal ones (pairwise facet intersections, then maximality filtering).
inline SimplicialComplex intersect(const SimplicialComplex& a, const SimplicialComplex& b) {
    if (a.is_empty_complex() || b.is_empty_complex()) return {};
    std::vector<Face> out;
    out.reserve(a.num_facets() * b.num_facets());
    for (const Face& f : a.facets())
        for (const Face& g : b.facets()) out.push_back(face_intersection(f, g));
    return make_complex(out);
}

/// Union of complexes, as the maximal faces of the combined facet lists.
inline SimplicialComplex union_of(const SimplicialComplex& a, const SimplicialComplex& b) {
    std::vector<Face> out(a.facets());
    out.insert(out.end(), b.facets().begin(), b.facets().end());
    return make_complex(out);
}

namespace detail {
constexpr std::int64_t max_enumerated_faces = std::int64_t(1) << 24;

/// All nonempty faces of the complex (downward closure), deduplicated.
inline std::vector<VertexSet> enumerate_faces(const SimplicialComplex& a) {
    std::int64_t bound = 0;
    for (const Face& f : a.facets()) {
        if (f.size() > 40) throw std::invalid_argument("facet too large to enumerate");
        bound += std::int64_t(1) << f.size();
        if (bound > max_enumerated_faces)
            throw std::invalid_argument("face enumeration cap exceeded");
    }
    std::unordered_set<VertexSet, VertexSetHash> seen;
    for (const VertexSet& f : a.facet_bits()) {
        std::vector<int> idx;
        f.for_each_bit([&](int i) { idx.push_back(i); });
        for (std::uint64_t m = 1; m < (std::uint64_t(1) << idx.size()); ++m) {
            VertexSet s;
            for (std::size_t j = 0; j < idx.size(); ++j)
                if ((m >> j) & 1) s.set(idx[j]);
            seen.insert(s);
        }
    }
    return {seen.begin(), seen.end()};
}
}  // namespace detail

/// f-vector, Euler characteristic, dimension, purity.
inline ComplexStats complex_stats(const SimplicialComplex& a) {
    ComplexStats st;
    st.dim = a.dim();
    st.is_pure = a.is_pure();
    if (a.dim() < 0) return st;
    st.f_vector.assign(std::size_t(a.dim()) + 1, 0);
    for (const VertexSet& s : detail::enumerate_faces(a)) ++st.f_vector[std::size_t(s.count()) - 1];
    for (std::size_t i = 0; i < st.f_vector.size(); ++i)
        st.euler += (i % 2 == 0) ? st.f_vector[i] : -st.f_vector[i];
    return st;
}

}  // namespace nsw
