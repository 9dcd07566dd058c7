#pragma once

// Builds the retriangulated spheres: per-cell data on the band diagonals,
// the two cell triangulations, the coned connecting cells, the band balls,
// their union, and the final sphere obtained by coning the boundary.

#include <cstdint>
#include <map>
#include <string>

#include "grid_model.hpp"

namespace nsw {

// ----------------------------------------------------------- choice vector

/// One bit per diagonal simplex of every non-simplex band, selecting the
/// first or second cell triangulation.  Slot order: bands ascending; within
/// a band the lower diagonal in lex order, then the upper diagonal in lex
/// order.  Serialized as a string over {'1','2'}.
struct ChoiceVector {
    std::string bits;
};

struct ChoiceSlot {
    int band;
    bool lower;
    GridTuple sigma;
};

inline std::vector<ChoiceSlot> choice_slots(const GridParams& p) {
    std::vector<ChoiceSlot> slots;
    for (int k = 1; k <= num_bands(p); ++k) {
        if (is_simplex_band(p, k)) continue;
        Diagonals d = diagonals(p, k);
        for (const GridTuple& s : d.low) slots.push_back({k, true, s});
        for (const GridTuple& s : d.up) slots.push_back({k, false, s});
    }
    return slots;
}

inline void validate_choices(const ChoiceVector& cv, std::size_t slot_count) {
    if (cv.bits.size() != slot_count)
        throw std::invalid_argument("choice vector length " + std::to_string(cv.bits.size()) +
                                    " does not match slot count " + std::to_string(slot_count));
    for (char c : cv.bits)
        if (c != '1' && c != '2') throw std::invalid_argument("choice vector entries must be 1 or 2");
}

/// Lookup table (band, tuple) -> 1|2 for one choice vector.
class ChoiceAssignment {
public:
    ChoiceAssignment(const GridParams& p, const ChoiceVector& cv)
        : slots_(choice_slots(p)) {
        validate_choices(cv, slots_.size());
        for (std::size_t i = 0; i < slots_.size(); ++i)
            map_[{slots_[i].band, slots_[i].sigma}] = cv.bits[i] - '0';
    }

    int at(int band, const GridTuple& sigma) const {
        auto it = map_.find({band, sigma});
        if (it == map_.end()) throw std::invalid_argument("no choice recorded for this cell");
        return it->second;
    }

    const std::vector<ChoiceSlot>& slots() const { return slots_; }

private:
    std::vector<ChoiceSlot> slots_;
    std::map<std::pair<int, GridTuple>, int> map_;
};

// ------------------------------------------------------------- band cache

/// Per-band data shared by the cell computations.
struct BandContext {
    int k = 0;
    bool simplex_band = false;
    SimplicialComplex ball_of_tuples;  // the band restriction of the grid
    SimplicialComplex bd;              // its boundary
    Diagonals diag;

    BandContext(const GridParams& p, int k_) : k(k_) {
        simplex_band = is_simplex_band(p, k);
        ball_of_tuples = band_complex(p, k);
        if (!simplex_band) {
            bd = boundary(ball_of_tuples);
            diag = diagonals(p, k);
        }
    }
};

// -------------------------------------------------------------- cell data

struct CellData {
    GridTuple sigma;
    int band = 0;
    bool lower = false;        // which diagonal the cell sits on
    SimplicialComplex D;       // sigma's faces on the band boundary
    Face missing;              // unique minimal non-face of D
    Face complement;           // sigma minus the missing face
};

namespace detail {

/// Closed form for the missing face.  Lower diagonal: the +1 vertices, plus
/// a_{i_l} for every coordinate at n-1.  Upper diagonal: the base vertices,
/// plus a_{i_l+1} for every coordinate at 1.
inline Face missing_face_closed_form(const GridParams& p, const GridTuple& sigma, bool lower) {
    std::vector<VertexId> v;
    for (int l = 1; l <= p.d; ++l) {
        int i = sigma[std::size_t(l) - 1];
        if (lower) {
            v.push_back(VertexId::path_vertex(l, i + 1));
            if (i == p.n - 1) v.push_back(VertexId::path_vertex(l, i));
        } else {
            v.push_back(VertexId::path_vertex(l, i));
            if (i == 1) v.push_back(VertexId::path_vertex(l, i + 1));
        }
    }
    return Face(std::move(v));
}

/// The minimal non-faces of D within the vertex set of sigma.
inline std::vector<Face> minimal_non_faces(const Face& sigma, const SimplicialComplex& D) {
    std::vector<Face> out;
    const auto& vs = sigma.vertices();
    for (std::uint32_t m = 1; m < (std::uint32_t(1) << vs.size()); ++m) {
        std::vector<VertexId> sub;
        for (std::size_t j = 0; j < vs.size(); ++j)
            if ((m >> j) & 1) sub.push_back(vs[j]);
        Face f(std::move(sub));
        if (D.contains(f)) continue;
        bool minimal = true;
        for (VertexId v : f)
            if (!D.contains(f.without(v))) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(f);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Data for one diagonal cell.  The missing face is computed both from the
/// definition (unique minimal non-face of the boundary restriction) and from
/// the closed form; a mismatch is a hard error.
inline CellData cell_data(const GridParams& p, const BandContext& ctx, const GridTuple& sigma,
                          bool lower) {
    if (ctx.simplex_band) throw std::invalid_argument("no cell data for simplex band");
    CellData c;
    c.sigma = sigma;
    c.band = ctx.k;
    c.lower = lower;
    Face sf = tuple_face(p, sigma);
    c.D = intersect(simplex_complex(sf), ctx.bd);

    std::vector<Face> mnf = detail::minimal_non_faces(sf, c.D);
    if (mnf.size() != 1)
        throw std::logic_error("diagonal cell does not have a unique minimal non-face");
    Face closed = detail::missing_face_closed_form(p, sigma, lower);
    if (!(mnf.front() == closed))
        throw std::logic_error("missing-face closed form disagrees with the definition");
    c.missing = closed;
    c.complement = face_minus(sf, c.missing);
    return c;
}

inline CellData cell_data(const GridParams& p, int k, const GridTuple& sigma, bool lower) {
    return cell_data(p, BandContext(p, k), sigma, lower);
}

/// One of the two triangulations of the cell over sigma: choice 1 joins the
/// missing face with the boundary of (complement * apex); choice 2 joins the
/// boundary of the missing face with (complement * apex).
inline SimplicialComplex cell_triangulation(const CellData& c, int choice) {
    VertexId apex = VertexId::band_apex(c.band);
    SimplicialComplex coned = simplex_complex(c.complement.with(apex));
    if (choice == 1) return join(simplex_complex(c.missing), boundary(coned));
    if (choice == 2) return join(boundary(simplex_complex(c.missing)), coned);
    throw std::invalid_argument("triangulation choice must be 1 or 2");
}

// ------------------------------------------------------- connecting cells

/// Band-boundary facets not contained in any diagonal simplex; these get
/// coned to the band apex.
inline std::vector<Face> connecting_cells(const GridParams& p, const BandContext& ctx) {
    if (ctx.simplex_band) throw std::invalid_argument("simplex band has no connecting cells");
    std::vector<Face> diag_faces;
    for (const GridTuple& t : ctx.diag.low) diag_faces.push_back(tuple_face(p, t));
    for (const GridTuple& t : ctx.diag.up) diag_faces.push_back(tuple_face(p, t));
    std::vector<Face> out;
    for (const Face& tau : ctx.bd.facets()) {
        bool in_diag = false;
        for (const Face& s : diag_faces)
            if (tau.subset_of(s)) {
                in_diag = true;
                break;
            }
        if (!in_diag) out.push_back(tau);
    }
    return out;
}

inline std::vector<Face> connecting_cells(const GridParams& p, int k) {
    return connecting_cells(p, BandContext(p, k));
}

// ------------------------------------------------------------- band balls

/// The retriangulated band ball: chosen cell triangulations on both
/// diagonals plus the coned connecting cells.  A simplex band is kept as
/// the simplex itself, with no apex.
inline SimplicialComplex build_band_ball(const GridParams& p, const BandContext& ctx,
                                         const ChoiceAssignment& choices) {
    if (ctx.simplex_band) return ctx.ball_of_tuples;
    VertexId apex = VertexId::band_apex(ctx.k);
    std::vector<Face> facets;
    auto add_cells = [&](const std::vector<GridTuple>& diag, bool lower) {
        for (const GridTuple& s : diag) {
            CellData c = cell_data(p, ctx, s, lower);
            SimplicialComplex t = cell_triangulation(c, choices.at(ctx.k, s));
            facets.insert(facets.end(), t.facets().begin(), t.facets().end());
        }
    };
    add_cells(ctx.diag.low, true);
    add_cells(ctx.diag.up, false);
    for (const Face& tau : connecting_cells(p, ctx)) facets.push_back(tau.with(apex));
    return make_complex(facets);
}

inline SimplicialComplex build_band_ball(const GridParams& p, int k, const ChoiceVector& cv) {
    return build_band_ball(p, BandContext(p, k), ChoiceAssignment(p, cv));
}

inline SimplicialComplex build_ball(const GridParams& p, const ChoiceVector& cv) {
    ChoiceAssignment choices(p, cv);
    std::vector<Face> facets;
    for (int k = 1; k <= num_bands(p); ++k) {
        SimplicialComplex bk = build_band_ball(p, BandContext(p, k), choices);
        facets.insert(facets.end(), bk.facets().begin(), bk.facets().end());
    }
    return make_complex(facets);
}

inline SimplicialComplex build_sphere(const GridParams& p, const ChoiceVector& cv) {
    SimplicialComplex ball = build_ball(p, cv);
    SimplicialComplex capped = cone(boundary(ball), VertexId::global_apex());
    return union_of(ball, capped);
}

/// Vertex count the index-sum formula predicts; holds whenever every band
/// of index <= ceil(d(n-1)/(d+2)) is a non-simplex band.
inline int formula_vertex_count(const GridParams& p) {
    int ceil_bands = (p.max_index_sum() + p.band_width() - 1) / p.band_width();
    return p.d * p.n + ceil_bands + 1;
}

inline bool formula_vertex_count_applies(const GridParams& p) {
    int ceil_bands = (p.max_index_sum() + p.band_width() - 1) / p.band_width();
    for (int k = 1; k <= ceil_bands; ++k)
        if (is_simplex_band(p, k)) return false;
    return true;
}

// ------------------------------------------------------------ enumeration

/// Counter-based SplitMix64; word t of a seeded stream.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t t) {
    std::uint64_t z = seed + (t + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::size_t exhaustive_choice_bit_cap = 20;

/// All choice vectors in binary counting order ('1' before '2', first slot
/// most significant).
inline std::vector<ChoiceVector> enumerate_all_choices(const GridParams& p) {
    std::size_t bits = choice_slots(p).size();
    if (bits > exhaustive_choice_bit_cap)
        throw std::invalid_argument("too many choice bits for exhaustive enumeration");
    std::vector<ChoiceVector> out;
    out.reserve(std::size_t(1) << bits);
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << bits); ++v) {
        std::string s(bits, '1');
        for (std::size_t i = 0; i < bits; ++i)
            if ((v >> (bits - 1 - i)) & 1) s[i] = '2';
        out.push_back({std::move(s)});
    }
    return out;
}

/// Seeded sample of choice vectors; duplicates allowed, streams reproducible
/// across runs and platforms.  Sample s, slot j uses stream word s*L+j.
inline std::vector<ChoiceVector> sample_choices(const GridParams& p, std::size_t count,
                                                std::uint64_t seed) {
    std::size_t bits = choice_slots(p).size();
    std::vector<ChoiceVector> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        std::string v(bits, '1');
        for (std::size_t j = 0; j < bits; ++j)
            if (splitmix64_at(seed, std::uint64_t(s) * bits + j) & 1) v[j] = '2';
        out.push_back({std::move(v)});
    }
    return out;
}

inline ChoiceVector uniform_choice(const GridParams& p, int which) {
    if (which != 1 && which != 2) throw std::invalid_argument("choice must be 1 or 2");
    return {std::string(choice_slots(p).size(), char('0' + which))};
}

}  // namespace nsw
