#pragma once

// The join of d paths of length n-1, viewed as a (2d-1)-ball whose top
// simplices are the tuples (i_1,...,i_d) in [n-1]^d.  Bands partition the
// tuples by index-sum ranges of width d+2; the extreme index sums of each
// band form its lower and upper diagonals.

#include <numeric>
#include <vector>

#include "complex_core.hpp"

namespace nsw {

struct GridParams {
    int d = 2;  // number of paths, >= 2
    int n = 2;  // vertices per path, >= 2

    GridParams(int d_, int n_) : d(d_), n(n_) {
        if (d < 2) throw std::invalid_argument("need at least two paths (d >= 2)");
        if (n < 2) throw std::invalid_argument("paths need at least two vertices (n >= 2)");
    }

    int sphere_dim() const { return 2 * d - 1; }
    int band_width() const { return d + 2; }
    int max_index_sum() const { return d * (n - 1); }
};

using GridTuple = std::vector<int>;

inline std::int64_t index_sum(const GridTuple& t) {
    return std::accumulate(t.begin(), t.end(), std::int64_t(0));
}

/// The 2d vertices {a_{i_l}^(l), a_{i_l+1}^(l)} of the top simplex named by
/// a grid tuple.
inline Face tuple_face(const GridParams& p, const GridTuple& t) {
    if (int(t.size()) != p.d) throw std::invalid_argument("tuple arity mismatch");
    std::vector<VertexId> v;
    v.reserve(std::size_t(2) * p.d);
    for (int l = 1; l <= p.d; ++l) {
        int i = t[std::size_t(l) - 1];
        if (i < 1 || i > p.n - 1) throw std::invalid_argument("tuple index out of range");
        v.push_back(VertexId::path_vertex(l, i));
        v.push_back(VertexId::path_vertex(l, i + 1));
    }
    return Face(std::move(v));
}

/// Number of bands.  The smallest K with K(d+2)-1 >= d(n-1), so that the
/// bands cover every tuple; when (d+2) divides d(n-1) this is one more than
/// d(n-1)/(d+2) and the top band is the single corner simplex.
inline int num_bands(const GridParams& p) { return p.max_index_sum() / p.band_width() + 1; }

inline bool has_extra_corner_band(const GridParams& p) {
    return p.max_index_sum() % p.band_width() == 0;
}

namespace detail {
template <typename Fn>
void enumerate_tuples_rec(const GridParams& p, GridTuple& t, int pos, Fn&& fn) {
    if (pos == p.d) {
        fn(t);
        return;
    }
    for (int i = 1; i <= p.n - 1; ++i) {
        t[std::size_t(pos)] = i;
        enumerate_tuples_rec(p, t, pos + 1, fn);
    }
}
}  // namespace detail

/// All grid tuples in lexicographic order.
inline std::vector<GridTuple> all_tuples(const GridParams& p) {
    std::vector<GridTuple> out;
    GridTuple t(std::size_t(p.d));
    detail::enumerate_tuples_rec(p, t, 0, [&](const GridTuple& u) { out.push_back(u); });
    return out;
}

/// Tuples of band k: index sums in [(k-1)(d+2), k(d+2)-1].  Lex order.
inline std::vector<GridTuple> band_tuples(const GridParams& p, int k) {
    if (k < 1 || k > num_bands(p)) throw std::invalid_argument("band index out of range");
    std::int64_t lo = std::int64_t(k - 1) * p.band_width();
    std::int64_t hi = std::int64_t(k) * p.band_width() - 1;
    std::vector<GridTuple> out;
    GridTuple t(std::size_t(p.d));
    detail::enumerate_tuples_rec(p, t, 0, [&](const GridTuple& u) {
        std::int64_t s = index_sum(u);
        if (s >= lo && s <= hi) out.push_back(u);
    });
    return out;
}

inline bool is_simplex_band(const GridParams& p, int k) { return band_tuples(p, k).size() == 1; }

struct Diagonals {
    std::vector<GridTuple> low;  // index sum (k-1)(d+2), lex order
    std::vector<GridTuple> up;   // index sum k(d+2)-1, lex order
};

inline Diagonals diagonals(const GridParams& p, int k) {
    Diagonals d;
    std::int64_t lo = std::int64_t(k - 1) * p.band_width();
    std::int64_t hi = std::int64_t(k) * p.band_width() - 1;
    for (const GridTuple& t : band_tuples(p, k)) {
        std::int64_t s = index_sum(t);
        if (s == lo) d.low.push_back(t);
        if (s == hi) d.up.push_back(t);
    }
    return d;
}

inline SimplicialComplex grid_complex(const GridParams& p) {
    std::vector<Face> f;
    for (const GridTuple& t : all_tuples(p)) f.push_back(tuple_face(p, t));
    return make_complex(f);
}

inline SimplicialComplex band_complex(const GridParams& p, int k) {
    std::vector<Face> f;
    for (const GridTuple& t : band_tuples(p, k)) f.push_back(tuple_face(p, t));
    return make_complex(f);
}

/// Closed-form boundary facets of the whole grid: for each tuple, drop
/// a_{i_l+1} where i_l = 1 and drop a_{i_l} where i_l = n-1.
inline std::vector<Face> grid_boundary_facets(const GridParams& p) {
    std::vector<Face> out;
    for (const GridTuple& t : all_tuples(p)) {
        Face f = tuple_face(p, t);
        for (int l = 1; l <= p.d; ++l) {
            int i = t[std::size_t(l) - 1];
            if (i == 1) out.push_back(f.without(VertexId::path_vertex(l, i + 1)));
            if (i == p.n - 1) out.push_back(f.without(VertexId::path_vertex(l, i)));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Boundary of the band ball, computed by the generic ridge scan.
inline SimplicialComplex band_boundary(const GridParams& p, int k) {
    return boundary(band_complex(p, k));
}

}  // namespace nsw
