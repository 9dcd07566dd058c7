#pragma once

// The explicit orderings used to certify the construction: the lexicographic
// order on diagonal cells, the per-path restriction order on equal-size grid
// faces, the closed-form intersection complexes that arise when cells are
// attached one by one, and the assembly of full shelling orders (two-path
// case) and chain-decomposition certificates (any number of paths).

#include "nsw_builder.hpp"
#include "verifier.hpp"

namespace nsw {

// ----------------------------------------------------- restriction order

/// Intersection of a face with one path: zero, one, or two consecutive
/// vertices for the faces this order is used on.
struct PathRestriction {
    int count = 0;
    int lo = 0;  // smallest index on the path, when count >= 1
    int hi = 0;  // largest index

    friend bool operator==(const PathRestriction&, const PathRestriction&) = default;
};

inline PathRestriction path_restriction(const Face& f, int r) {
    PathRestriction pr;
    for (VertexId v : f) {
        if (v.kind() != VertexId::Kind::path || v.path() != r) continue;
        if (pr.count == 0) pr.lo = v.index();
        pr.hi = v.index();
        ++pr.count;
    }
    if (pr.count > 2) throw std::invalid_argument("path restriction larger than an edge");
    return pr;
}

/// The five-case comparison of path restrictions.  For restrictions of size
/// two, lo is the lower endpoint i_r of the edge {a_{i_r}, a_{i_r+1}}.
inline bool restriction_greater(const Face& a, const Face& b, int r) {
    PathRestriction x = path_restriction(a, r);
    PathRestriction y = path_restriction(b, r);
    if (x.count != 0 && y.count == 0) return true;                      // 1
    if (x.count == 1 && y.count == 1) return x.lo > y.lo;               // 2
    if (x.count == 2 && y.count == 2) return x.lo > y.lo;               // 3
    if (x.count == 2 && y.count == 1) return x.lo >= y.lo;              // 4
    if (x.count == 1 && y.count == 2) return x.lo >= y.lo + 1;          // 5
    return false;
}

/// Strict order on equal-size grid faces: a precedes b when, at the first
/// path where their restrictions differ, b's restriction is the greater one.
inline bool restriction_less(const Face& a, const Face& b, int num_paths) {
    if (a.size() != b.size()) throw std::invalid_argument("restriction order needs equal sizes");
    for (int r = 1; r <= num_paths; ++r) {
        if (path_restriction(a, r) == path_restriction(b, r)) continue;
        return restriction_greater(b, a, r);
    }
    return false;
}

/// Argument-flipped wrapper: whether bp precedes ap.
inline bool prec(const Face& ap, const Face& bp, int num_paths) {
    return restriction_less(bp, ap, num_paths);
}

// --------------------------------------------- lower diagonal intersection

/// Facets of the overlap of a fixed-index-sum simplex with its lexicographic
/// predecessors: drop a_{i_l+1} and a_{i_m} for every l < m with i_l > 1 and
/// i_m < n-1.  Listed in (l, m) order, which is also the shelling order.
inline std::vector<Face> lower_intersection_facets(const GridParams& p, const GridTuple& sigma) {
    Face f = tuple_face(p, sigma);
    std::vector<Face> out;
    for (int l = 1; l <= p.d; ++l) {
        if (sigma[std::size_t(l) - 1] <= 1) continue;
        for (int m = l + 1; m <= p.d; ++m) {
            if (sigma[std::size_t(m) - 1] >= p.n - 1) continue;
            out.push_back(f.without(VertexId::path_vertex(l, sigma[std::size_t(l) - 1] + 1))
                              .without(VertexId::path_vertex(m, sigma[std::size_t(m) - 1])));
        }
    }
    return out;
}

inline ShellingOrder lower_intersection_shelling(const GridParams& p, const GridTuple& sigma) {
    return make_shelling(lower_intersection_facets(p, sigma));
}

// --------------------------------------------- upper diagonal intersection

/// Facets of the overlap of an upper-diagonal simplex with its lexicographic
/// predecessors, the lower diagonal, and the connecting cells.  The list is
/// produced in the shelling order: for each path l in turn,
///   - i_l = 1: drop a_{i_l+1} together with a_{i_m+1} for every m with
///     i_m > 1;
///   - 1 < i_l < n-1: drop the whole edge {a_{i_l}, a_{i_l+1}} first, then
///     drop a_{i_l+1} together with a_{i_m} for every m > l with i_m < n-1;
///   - i_l = n-1: drop a_{i_l} together with a_{i_m+1} for every m != l with
///     i_m > 1, then the whole edge, then a_{i_l+1} together with a_{i_m}
///     for every m > l with i_m < n-1.
inline std::vector<Face> upper_intersection_facets(const GridParams& p, const GridTuple& sigma) {
    Face f = tuple_face(p, sigma);
    auto base = [&](int l) { return VertexId::path_vertex(l, sigma[std::size_t(l) - 1]); };
    auto plus = [&](int l) { return VertexId::path_vertex(l, sigma[std::size_t(l) - 1] + 1); };
    std::vector<Face> out;
    for (int l = 1; l <= p.d; ++l) {
        int il = sigma[std::size_t(l) - 1];
        if (il == 1) {
            for (int m = 1; m <= p.d; ++m)
                if (sigma[std::size_t(m) - 1] > 1)
                    out.push_back(f.without(plus(l)).without(plus(m)));
        } else if (il < p.n - 1) {
            out.push_back(f.without(base(l)).without(plus(l)));
            for (int m = l + 1; m <= p.d; ++m)
                if (sigma[std::size_t(m) - 1] < p.n - 1)
                    out.push_back(f.without(plus(l)).without(base(m)));
        } else {
            for (int m = 1; m <= p.d; ++m)
                if (m != l && sigma[std::size_t(m) - 1] > 1)
                    out.push_back(f.without(base(l)).without(plus(m)));
            out.push_back(f.without(base(l)).without(plus(l)));
            for (int m = l + 1; m <= p.d; ++m)
                if (sigma[std::size_t(m) - 1] < p.n - 1)
                    out.push_back(f.without(plus(l)).without(base(m)));
        }
    }
    return out;
}

inline ShellingOrder upper_facet_shelling(const GridParams& p, const GridTuple& sigma) {
    return make_shelling(upper_intersection_facets(p, sigma));
}

// ------------------------------------------------------------- band gluing

/// For a lower-diagonal simplex, the faces it shares with the previous band:
/// drop a_{i_l+1} for every l with i_l > 1 (each such face also lies in the
/// tuple with i_l decremented, which sits on the previous band's upper
/// diagonal; for i_l = 1 no such neighbour exists).
inline std::vector<Face> glue_fan_faces(const GridParams& p, const GridTuple& sigma) {
    Face f = tuple_face(p, sigma);
    std::vector<Face> out;
    for (int l = 1; l <= p.d; ++l)
        if (sigma[std::size_t(l) - 1] > 1)
            out.push_back(f.without(VertexId::path_vertex(l, sigma[std::size_t(l) - 1] + 1)));
    return out;
}

/// The overlap of band k with the union of the earlier bands: the dropped-
/// plus faces of every lower-diagonal simplex.  Shelled by concatenating the
/// per-simplex fans in lex order of the simplices.
inline ShellingOrder band_glue_complex(const GridParams& p, int k) {
    std::vector<Face> order;
    if (k >= 2)
        for (const GridTuple& s : diagonals(p, k).low)
            for (Face& f : glue_fan_faces(p, s)) order.push_back(std::move(f));
    return make_shelling(std::move(order));
}

// -------------------------------------------------------- boundary shelling

/// All boundary facets of the grid, in the restriction order; this shells
/// the boundary of the ball (which equals the boundary of the grid).
inline ShellingOrder boundary_shelling(const GridParams& p) {
    std::vector<Face> order = grid_boundary_facets(p);
    std::sort(order.begin(), order.end(),
              [&](const Face& a, const Face& b) { return restriction_less(a, b, p.d); });
    return make_shelling(std::move(order));
}

// ------------------------------------------------------------ cell orders

/// Facets of a chosen cell triangulation in shelling order.  In the two-path
/// case these rows coincide with the fixed tables used by the 3-sphere
/// shelling; the same rules apply verbatim for more paths.
inline std::vector<Face> cell_shelling(const CellData& c, int choice) {
    if (choice != 1 && choice != 2)
        throw std::invalid_argument("triangulation choice must be 1 or 2");
    int d = int(c.sigma.size());
    Face sigma = face_union(c.missing, c.complement);
    Face coned = sigma.with(VertexId::band_apex(c.band));
    auto base = [&](int l) { return VertexId::path_vertex(l, c.sigma[std::size_t(l) - 1]); };
    auto plus = [&](int l) { return VertexId::path_vertex(l, c.sigma[std::size_t(l) - 1] + 1); };

    std::vector<Face> rows;
    if (c.lower) {
        if (choice == 1) {
            // the simplex itself, then the coned facets dropping the
            // complement vertices in descending path order
            rows.push_back(sigma);
            for (int l = d; l >= 1; --l)
                if (c.complement.has_vertex(base(l))) rows.push_back(coned.without(base(l)));
        } else {
            // coned facets dropping each a_{i_l+1}, then each a_{i_l} that
            // belongs to the missing face, in ascending path order; drops at
            // coordinates with i_l > 1 go first, because only those faces
            // are shared with the previous band and can open the cell
            for (int l = 1; l <= d; ++l)
                if (c.sigma[std::size_t(l) - 1] > 1) rows.push_back(coned.without(plus(l)));
            for (int l = 1; l <= d; ++l)
                if (c.sigma[std::size_t(l) - 1] == 1) rows.push_back(coned.without(plus(l)));
            for (int l = 1; l <= d; ++l)
                if (c.missing.has_vertex(base(l))) rows.push_back(coned.without(base(l)));
        }
    } else {
        if (choice == 1) {
            // coned facets dropping the complement vertices in ascending
            // path order, then the simplex itself
            for (int l = 1; l <= d; ++l)
                if (c.complement.has_vertex(plus(l))) rows.push_back(coned.without(plus(l)));
            rows.push_back(sigma);
        } else {
            // coned facets dropping each a_{i_l+1} in the missing face, then
            // each a_{i_l}, in descending path order
            for (int l = d; l >= 1; --l)
                if (c.missing.has_vertex(plus(l))) rows.push_back(coned.without(plus(l)));
            for (int l = d; l >= 1; --l) rows.push_back(coned.without(base(l)));
        }
    }
    return rows;
}

// ----------------------------------------------------------- certificates

namespace detail {

/// Chain of the simplices of one shellable complex, with glue shellings
/// computed from the pairwise overlaps (each glue is a family of
/// codimension-1 faces of the new simplex, shellable in any order).
inline ConstructibilityTree chain_of_leaves(const std::vector<Face>& order) {
    std::vector<ConstructibilityTree> blocks;
    std::vector<ShellingOrder> glues;
    for (std::size_t i = 0; i < order.size(); ++i) {
        blocks.push_back(ConstructibilityTree::make_leaf(order[i]));
        if (i == 0) continue;
        std::vector<Face> meet;
        for (std::size_t j = 0; j < i; ++j) meet.push_back(face_intersection(order[i], order[j]));
        SimplicialComplex m = make_complex(meet);
        glues.push_back({m, m.facets()});
    }
    return ConstructibilityTree::make_chain(std::move(blocks), std::move(glues));
}

inline ConstructibilityTree band_certificate(const GridParams& p, const BandContext& ctx,
                                             const ChoiceAssignment& choices) {
    if (ctx.simplex_band)
        return ConstructibilityTree::make_leaf(tuple_face(p, band_tuples(p, ctx.k).front()));

    VertexId apex = VertexId::band_apex(ctx.k);
    std::vector<ConstructibilityTree> blocks;
    std::vector<ShellingOrder> glues;

    for (std::size_t j = 0; j < ctx.diag.low.size(); ++j) {
        const GridTuple& s = ctx.diag.low[j];
        CellData cd = cell_data(p, ctx, s, true);
        blocks.push_back(chain_of_leaves(cell_shelling(cd, choices.at(ctx.k, s))));
        if (j > 0) glues.push_back(cone_shelling(lower_intersection_shelling(p, s), apex));
    }

    // connecting cells against the earlier ones and the lower diagonal;
    // the overlap is a fan of codimension-1 faces of the cell, ordered by
    // backtracking search
    std::vector<Face> prior;
    for (const GridTuple& s : ctx.diag.low) prior.push_back(tuple_face(p, s));
    std::vector<Face> connect = connecting_cells(p, ctx);
    std::sort(connect.begin(), connect.end(),
              [&](const Face& a, const Face& b) { return restriction_less(a, b, p.d); });
    for (const Face& tau : connect) {
        if (!blocks.empty()) {
            std::vector<Face> meet;
            for (const Face& q : prior) meet.push_back(face_intersection(tau, q));
            auto found = brute_force_shelling(make_complex(meet));
            if (!found)
                throw std::logic_error("connecting-cell overlap admits no shelling order");
            glues.push_back(cone_shelling(*found, apex));
        }
        blocks.push_back(ConstructibilityTree::make_leaf(tau.with(apex)));
        prior.push_back(tau);
    }

    for (const GridTuple& s : ctx.diag.up) {
        CellData cd = cell_data(p, ctx, s, false);
        if (!blocks.empty()) glues.push_back(cone_shelling(upper_facet_shelling(p, s), apex));
        blocks.push_back(chain_of_leaves(cell_shelling(cd, choices.at(ctx.k, s))));
    }

    return ConstructibilityTree::make_chain(std::move(blocks), std::move(glues));
}

}  // namespace detail

/// Chain decomposition of the ball: one block per band, glued along the
/// dropped-plus fans of the lower diagonals.
inline ConstructibilityTree ball_certificate(const GridParams& p, const ChoiceVector& cv) {
    ChoiceAssignment choices(p, cv);
    std::vector<ConstructibilityTree> blocks;
    std::vector<ShellingOrder> glues;
    for (int k = 1; k <= num_bands(p); ++k) {
        BandContext ctx(p, k);
        blocks.push_back(detail::band_certificate(p, ctx, choices));
        if (k >= 2) glues.push_back(band_glue_complex(p, k));
    }
    return ConstructibilityTree::make_chain(std::move(blocks), std::move(glues));
}

/// Chain decomposition of the sphere: the ball, then the coned boundary,
/// glued along the boundary in the restriction order.
inline ConstructibilityTree sphere_certificate(const GridParams& p, const ChoiceVector& cv) {
    ConstructibilityTree ball = ball_certificate(p, cv);
    ShellingOrder bd = boundary_shelling(p);
    VertexId apex = VertexId::global_apex();

    std::vector<ConstructibilityTree> cap_blocks;
    std::vector<ShellingOrder> cap_glues;
    for (std::size_t i = 0; i < bd.order.size(); ++i) {
        cap_blocks.push_back(ConstructibilityTree::make_leaf(bd.order[i].with(apex)));
        if (i == 0) continue;
        std::vector<Face> meet;
        for (std::size_t j = 0; j < i; ++j)
            meet.push_back(face_intersection(bd.order[i], bd.order[j]).with(apex));
        SimplicialComplex m = make_complex(meet);
        cap_glues.push_back({m, m.facets()});
    }
    ConstructibilityTree cap =
        ConstructibilityTree::make_chain(std::move(cap_blocks), std::move(cap_glues));

    std::vector<ConstructibilityTree> blocks;
    blocks.push_back(std::move(ball));
    blocks.push_back(std::move(cap));
    std::vector<ShellingOrder> glues;
    glues.push_back(std::move(bd));
    return ConstructibilityTree::make_chain(std::move(blocks), std::move(glues));
}

// ------------------------------------------------------- 3-sphere shelling

/// Full shelling order of a two-path sphere: per band, the lower-diagonal
/// cell rows in lex order, the coned connecting cells in restriction order,
/// the upper-diagonal cell rows in lex order; then the coned boundary facets
/// in restriction order.
inline ShellingOrder sphere_shelling_3d(const GridParams& p, const ChoiceVector& cv) {
    if (p.d != 2)
        throw std::invalid_argument("the explicit sphere shelling exists for two paths only");
    ChoiceAssignment choices(p, cv);
    std::vector<Face> order;
    for (int k = 1; k <= num_bands(p); ++k) {
        BandContext ctx(p, k);
        if (ctx.simplex_band) {
            order.push_back(tuple_face(p, band_tuples(p, k).front()));
            continue;
        }
        VertexId apex = VertexId::band_apex(k);
        for (const GridTuple& s : ctx.diag.low) {
            CellData cd = cell_data(p, ctx, s, true);
            for (Face& f : cell_shelling(cd, choices.at(k, s))) order.push_back(std::move(f));
        }
        std::vector<Face> connect = connecting_cells(p, ctx);
        std::sort(connect.begin(), connect.end(),
                  [&](const Face& a, const Face& b) { return restriction_less(a, b, p.d); });
        for (const Face& tau : connect) order.push_back(tau.with(apex));
        for (const GridTuple& s : ctx.diag.up) {
            CellData cd = cell_data(p, ctx, s, false);
            for (Face& f : cell_shelling(cd, choices.at(k, s))) order.push_back(std::move(f));
        }
    }
    VertexId apex = VertexId::global_apex();
    for (const Face& tau : boundary_shelling(p).order) order.push_back(tau.with(apex));
    return make_shelling(std::move(order));
}

}  // namespace nsw
