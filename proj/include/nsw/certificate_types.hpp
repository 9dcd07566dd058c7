#pragma once

// Certificate value types: an ordered facet sequence claiming to shell a
// complex, and a recursive chain decomposition whose gluing steps carry
// shelling orders for the pairwise intersections.

#include "complex_core.hpp"

namespace nsw {

struct ShellingOrder {
    SimplicialComplex complex;
    std::vector<Face> order;  // a permutation of the facets
};

inline ShellingOrder make_shelling(std::vector<Face> order) {
    SimplicialComplex c = make_complex(order);
    return {std::move(c), std::move(order)};
}

inline ShellingOrder cone_shelling(const ShellingOrder& base, VertexId apex) {
    std::vector<Face> order;
    order.reserve(base.order.size());
    for (const Face& f : base.order) order.push_back(f.with(apex));
    return make_shelling(std::move(order));
}

/// Either a single simplex or a chain of blocks; block i >= 2 must meet the
/// union of its predecessors in exactly the complex shelled by glue[i-2].
/// A chain of length m encodes m-1 nested binary decompositions.
struct ConstructibilityTree {
    bool is_leaf = false;
    Face leaf;
    std::vector<ConstructibilityTree> blocks;
    std::vector<ShellingOrder> glues;

    static ConstructibilityTree make_leaf(Face f) {
        ConstructibilityTree t;
        t.is_leaf = true;
        t.leaf = std::move(f);
        return t;
    }
    static ConstructibilityTree make_chain(std::vector<ConstructibilityTree> blocks,
                                           std::vector<ShellingOrder> glues) {
        ConstructibilityTree t;
        t.blocks = std::move(blocks);
        t.glues = std::move(glues);
        return t;
    }
};

namespace detail {
inline void collect_leaf_faces(const ConstructibilityTree& t, std::vector<Face>& out) {
    if (t.is_leaf) {
        out.push_back(t.leaf);
        return;
    }
    for (const ConstructibilityTree& b : t.blocks) collect_leaf_faces(b, out);
}
}  // namespace detail

/// Union of all leaf simplices of the tree.
inline SimplicialComplex complex_of(const ConstructibilityTree& t) {
    std::vector<Face> faces;
    detail::collect_leaf_faces(t, faces);
    return make_complex(faces);
}

}  // namespace nsw
