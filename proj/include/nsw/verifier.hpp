#pragma once

// Independent checking: shelling validation, chain-decomposition validation,
// brute-force shelling search, GF(2) homology, pseudomanifold tests, and
// labeled/unlabeled comparison of small complexes.

#include <cstdint>
#include <deque>
#include <optional>

#include "certificate_types.hpp"

namespace nsw {

struct CheckViolation {
    std::string kind;       // short machine-readable tag
    std::string detail;     // human-readable explanation
    int step = -1;          // 1-based step index for shelling violations
    Face facet;             // offending facet, when applicable
    std::string node_path;  // tree location for constructibility violations
};

struct CheckReport {
    bool ok = true;
    std::optional<CheckViolation> violation;

    static CheckReport pass() { return {}; }
    static CheckReport fail(CheckViolation v) { return {false, std::move(v)}; }
};

// ---------------------------------------------------------------- shelling

/// Validates that the order is a shelling: each facet must meet the union of
/// its predecessors in a pure codimension-1 complex.  Per step this reduces
/// to: some vertex-dropped subface of the new facet lies in an earlier
/// facet, and every overlap with an earlier facet is contained in such a
/// subface.  Throws if the order is not a permutation of the facets or the
/// complex is not pure.
inline CheckReport check_shelling(const SimplicialComplex& c, const std::vector<Face>& order) {
    if (!c.is_pure()) throw std::invalid_argument("check_shelling requires a pure complex");
    {
        std::vector<Face> sorted(order);
        std::sort(sorted.begin(), sorted.end());
        if (sorted != c.facets())
            throw std::invalid_argument("order is not a permutation of the facets");
    }
    if (order.size() <= 1) return CheckReport::pass();

    std::vector<VertexSet> enc;
    enc.reserve(order.size());
    for (const Face& f : order) enc.push_back(*c.encode(f));

    std::unordered_set<VertexSet, VertexSetHash> seen_ridges;
    auto add_ridges = [&](const VertexSet& f) {
        f.for_each_bit([&](int i) {
            VertexSet r = f;
            r.clear(i);
            seen_ridges.insert(r);
        });
    };
    add_ridges(enc[0]);

    for (std::size_t i = 1; i < order.size(); ++i) {
        VertexSet w;  // vertices whose dropped subface lies in an earlier facet
        enc[i].for_each_bit([&](int v) {
            VertexSet r = enc[i];
            r.clear(v);
            if (seen_ridges.count(r)) w.set(v);
        });
        if (w.none())
            return CheckReport::fail({"shelling-empty-step",
                                      "facet meets the earlier union in no codimension-1 face",
                                      int(i) + 1, order[i], ""});
        for (std::size_t j = 0; j < i; ++j) {
            if (w.subset_of(enc[j]))
                return CheckReport::fail(
                    {"shelling-impure-step",
                     "overlap with step-" + std::to_string(j + 1) +
                         " facet is not inside a codimension-1 overlap face",
                     int(i) + 1, order[i], ""});
        }
        add_ridges(enc[i]);
    }
    return CheckReport::pass();
}

// ------------------------------------------------------------- brute force

/// Backtracking search for a shelling order; deterministic (tries facets in
/// their canonical order), memoizes dead facet subsets.  Capped facet count.
inline std::optional<ShellingOrder> brute_force_shelling(const SimplicialComplex& c,
                                                         std::size_t cap = 24) {
    if (!c.is_pure()) throw std::invalid_argument("brute_force_shelling requires a pure complex");
    std::size_t m = c.num_facets();
    if (m > cap || m > 31) throw std::invalid_argument("brute-force shelling cap exceeded");
    if (m <= 1) return ShellingOrder{c, c.facets()};

    const std::vector<VertexSet>& enc = c.facet_bits();
    std::unordered_set<std::uint32_t> dead;
    std::vector<std::size_t> picked;
    picked.reserve(m);

    auto step_ok = [&](std::size_t cand, std::uint32_t mask) {
        VertexSet w;
        bool any = false;
        enc[cand].for_each_bit([&](int v) {
            VertexSet r = enc[cand];
            r.clear(v);
            for (std::size_t j = 0; j < m; ++j)
                if ((mask >> j) & 1 && r.subset_of(enc[j])) {
                    w.set(v);
                    any = true;
                    break;
                }
        });
        if (!any) return false;
        for (std::size_t j = 0; j < m; ++j)
            if ((mask >> j) & 1 && w.subset_of(enc[j])) return false;
        return true;
    };

    auto dfs = [&](auto&& self, std::uint32_t mask) -> bool {
        if (picked.size() == m) return true;
        if (dead.count(mask)) return false;
        for (std::size_t cand = 0; cand < m; ++cand) {
            if ((mask >> cand) & 1) continue;
            if (mask != 0 && !step_ok(cand, mask)) continue;
            picked.push_back(cand);
            if (self(self, mask | (std::uint32_t(1) << cand))) return true;
            picked.pop_back();
        }
        dead.insert(mask);
        return false;
    };

    if (!dfs(dfs, 0)) return std::nullopt;
    std::vector<Face> order;
    order.reserve(m);
    for (std::size_t i : picked) order.push_back(c.facets()[i]);
    return ShellingOrder{c, std::move(order)};
}

// --------------------------------------------------------- constructibility

namespace detail {
inline CheckReport check_node(const ConstructibilityTree& t, const std::string& path,
                              SimplicialComplex& out) {
    if (t.is_leaf) {
        out = simplex_complex(t.leaf);
        return CheckReport::pass();
    }
    if (t.blocks.empty())
        return CheckReport::fail({"tree-structure", "chain with no blocks", -1, Face(), path});
    if (t.glues.size() + 1 != t.blocks.size())
        return CheckReport::fail(
            {"tree-structure", "chain needs exactly one glue per block after the first", -1,
             Face(), path});

    std::vector<SimplicialComplex> blocks(t.blocks.size());
    for (std::size_t i = 0; i < t.blocks.size(); ++i) {
        CheckReport r =
            check_node(t.blocks[i], path + ".block[" + std::to_string(i + 1) + "]", blocks[i]);
        if (!r.ok) return r;
    }
    int dim = blocks[0].dim();
    for (std::size_t i = 1; i < blocks.size(); ++i)
        if (blocks[i].dim() != dim)
            return CheckReport::fail({"tree-dimension", "chain blocks have unequal dimensions",
                                      -1, Face(), path + ".block[" + std::to_string(i + 1) + "]"});

    SimplicialComplex prefix = blocks[0];
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        std::string where = path + ".glue[" + std::to_string(i) + "]";
        const ShellingOrder& glue = t.glues[i - 1];
        SimplicialComplex meet = intersect(prefix, blocks[i]);
        if (!(glue.complex == meet))
            return CheckReport::fail({"glue-mismatch",
                                      "glue complex differs from the computed intersection", -1,
                                      Face(), where});
        if (meet.dim() != dim - 1)
            return CheckReport::fail({"glue-dimension",
                                      "intersection dimension is not one below the blocks", -1,
                                      Face(), where});
        CheckReport sr = check_shelling(glue.complex, glue.order);
        if (!sr.ok) {
            CheckViolation v = *sr.violation;
            v.node_path = where;
            return CheckReport::fail(std::move(v));
        }
        prefix = union_of(prefix, blocks[i]);
    }
    out = std::move(prefix);
    return CheckReport::pass();
}
}  // namespace detail

/// Recursively validates a chain decomposition: every leaf is a simplex and
/// every block beyond the first meets the union of its predecessors in
/// exactly the complex its glue shells, one dimension down.
inline CheckReport check_constructibility(const ConstructibilityTree& t) {
    SimplicialComplex ignored;
    return detail::check_node(t, "root", ignored);
}

// ---------------------------------------------------------------- homology

constexpr std::int64_t homology_face_cap = std::int64_t(1) << 22;

/// GF(2) Betti numbers b_0..b_D by rank elimination on the boundary maps.
inline std::vector<std::int64_t> homology_mod2(const SimplicialComplex& c) {
    int dim = c.dim();
    if (dim < 0) return {};
    {
        std::int64_t bound = 0;
        for (const Face& f : c.facets()) bound += std::int64_t(1) << f.size();
        if (bound > homology_face_cap) throw std::invalid_argument("homology face cap exceeded");
    }

    std::vector<std::unordered_map<VertexSet, std::int64_t, VertexSetHash>> faces(
        std::size_t(dim) + 1);
    for (const VertexSet& s : detail::enumerate_faces(c)) {
        auto& level = faces[std::size_t(s.count()) - 1];
        std::int64_t id = std::int64_t(level.size());
        level.emplace(s, id);
    }

    // rank of the boundary map from dimension i to i-1, for i = 1..dim
    std::vector<std::int64_t> rank(std::size_t(dim) + 2, 0);
    for (int i = 1; i <= dim; ++i) {
        const auto& rows_src = faces[std::size_t(i)];
        const auto& cols = faces[std::size_t(i) - 1];
        std::size_t words = (cols.size() + 63) / 64;
        std::vector<std::vector<std::uint64_t>> pivots(cols.size());
        std::int64_t r = 0;
        for (const auto& [f, id] : rows_src) {
            std::vector<std::uint64_t> row(words, 0);
            f.for_each_bit([&](int v) {
                VertexSet sub = f;
                sub.clear(v);
                std::int64_t col = cols.at(sub);
                row[std::size_t(col) >> 6] ^= std::uint64_t(1) << (col & 63);
            });
            for (;;) {
                std::int64_t lead = -1;
                for (std::size_t w = 0; w < words; ++w)
                    if (row[w]) {
                        lead = std::int64_t(w) * 64 + std::countr_zero(row[w]);
                        break;
                    }
                if (lead < 0) break;
                if (pivots[std::size_t(lead)].empty()) {
                    pivots[std::size_t(lead)] = std::move(row);
                    ++r;
                    break;
                }
                const auto& p = pivots[std::size_t(lead)];
                for (std::size_t w = 0; w < words; ++w) row[w] ^= p[w];
            }
        }
        rank[std::size_t(i)] = r;
    }

    std::vector<std::int64_t> betti(std::size_t(dim) + 1, 0);
    for (int i = 0; i <= dim; ++i)
        betti[std::size_t(i)] = std::int64_t(faces[std::size_t(i)].size()) -
                                rank[std::size_t(i)] - rank[std::size_t(i) + 1];
    return betti;
}

// ----------------------------------------------------------- manifold-ness

/// Every ridge must lie in exactly two facets.
inline CheckReport is_closed_pseudomanifold(const SimplicialComplex& c) {
    if (!c.is_pure() || c.dim() < 1)
        throw std::invalid_argument("pseudomanifold check requires a pure complex of dim >= 1");
    std::unordered_map<VertexSet, int, VertexSetHash> ridge_count;
    for (const VertexSet& f : c.facet_bits())
        f.for_each_bit([&](int i) {
            VertexSet r = f;
            r.clear(i);
            ++ridge_count[r];
        });
    for (const auto& [r, cnt] : ridge_count)
        if (cnt != 2)
            return CheckReport::fail({"ridge-count",
                                      "ridge lies in " + std::to_string(cnt) + " facets", -1,
                                      c.decode(r), ""});
    return CheckReport::pass();
}

/// Facet-adjacency (shared-ridge) graph connectivity.
inline bool strongly_connected(const SimplicialComplex& c) {
    if (!c.is_pure()) throw std::invalid_argument("strong connectivity requires a pure complex");
    std::size_t m = c.num_facets();
    if (m <= 1) return true;
    int d = c.dim();
    const auto& enc = c.facet_bits();
    std::vector<char> seen(m, 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < m; ++v) {
            if (seen[v]) continue;
            if ((enc[u] & enc[v]).count() == d) {
                seen[v] = 1;
                ++visited;
                queue.push_back(v);
            }
        }
    }
    return visited == m;
}

// ---------------------------------------------------------------- equality

inline bool labeled_equal(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a == b;
}

namespace detail {
struct VertexSignature {
    std::int64_t facet_count = 0;
    std::vector<int> facet_sizes;  // sorted
    friend bool operator==(const VertexSignature&, const VertexSignature&) = default;
    friend auto operator<=>(const VertexSignature&, const VertexSignature&) = default;
};

inline std::vector<VertexSignature> vertex_signatures(const SimplicialComplex& c) {
    std::vector<VertexSignature> sig(c.support().size());
    for (const VertexSet& f : c.facet_bits()) {
        int sz = f.count();
        f.for_each_bit([&](int i) {
            ++sig[std::size_t(i)].facet_count;
            sig[std::size_t(i)].facet_sizes.push_back(sz);
        });
    }
    for (auto& s : sig) std::sort(s.facet_sizes.begin(), s.facet_sizes.end());
    return sig;
}
}  // namespace detail

/// Existence of a vertex bijection carrying facets onto facets.  Backtracking
/// with per-vertex facet-profile invariants; capped vertex count.
inline bool are_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b,
                           std::size_t cap = 14) {
    if (a.support().size() != b.support().size() || a.num_facets() != b.num_facets())
        return false;
    std::size_t nv = a.support().size();
    if (nv > cap) throw std::invalid_argument("isomorphism vertex cap exceeded");
    if (nv == 0) return a.num_facets() == b.num_facets();

    auto sig_a = detail::vertex_signatures(a);
    auto sig_b = detail::vertex_signatures(b);
    {
        auto sa = sig_a;
        auto sb = sig_b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }

    std::vector<int> image(nv, -1);
    std::vector<char> used(nv, 0);
    auto facets_match = [&]() {
        std::vector<Face> mapped;
        mapped.reserve(a.num_facets());
        for (const Face& f : a.facets()) {
            std::vector<VertexId> w;
            for (VertexId v : f) {
                auto it = std::lower_bound(a.support().begin(), a.support().end(), v);
                w.push_back(b.support()[std::size_t(image[std::size_t(it - a.support().begin())])]);
            }
            mapped.push_back(Face(std::move(w)));
        }
        std::sort(mapped.begin(), mapped.end());
        return mapped == b.facets();
    };

    // vertex adjacency inside facets, used to prune partial maps
    auto adjacency = [nv](const SimplicialComplex& c) {
        std::vector<VertexSet> adj(nv);
        for (const VertexSet& f : c.facet_bits())
            f.for_each_bit([&](int i) { adj[std::size_t(i)] = adj[std::size_t(i)] | f; });
        return adj;
    };
    auto adj_a = adjacency(a);
    auto adj_b = adjacency(b);

    auto dfs = [&](auto&& self, std::size_t i) -> bool {
        if (i == nv) return facets_match();
        for (std::size_t j = 0; j < nv; ++j) {
            if (used[j] || !(sig_a[i] == sig_b[j])) continue;
            bool consistent = true;
            for (std::size_t u = 0; u < i && consistent; ++u)
                if (adj_a[i].test(int(u)) != adj_b[j].test(image[u])) consistent = false;
            if (!consistent) continue;
            image[i] = int(j);
            used[j] = 1;
            if (self(self, i + 1)) return true;
            used[j] = 0;
            image[i] = -1;
        }
        return false;
    };
    return dfs(dfs, 0);
}

}  // namespace nsw
