#include "rpd/absorption.hpp"

#include <algorithm>
#include <string>

#include "rpd/util.hpp"

namespace rpd {

StarPack greedy_star_pack(const OrientedTree& t) {
    require(t.order() >= 2, "star packing needs at least two vertices");
    StarPack pack;
    pack.member_of.assign(static_cast<std::size_t>(t.order()), -1);
    for (int v = 0; v < t.order(); ++v) {
        bool free = pack.member_of[static_cast<std::size_t>(v)] < 0;
        for (int w : t.out_neighbors(v)) free = free && pack.member_of[static_cast<std::size_t>(w)] < 0;
        for (int w : t.in_neighbors(v)) free = free && pack.member_of[static_cast<std::size_t>(w)] < 0;
        if (!free) continue;
        const int idx = pack.size();
        pack.member_of[static_cast<std::size_t>(v)] = idx;
        for (int w : t.out_neighbors(v)) pack.member_of[static_cast<std::size_t>(w)] = idx;
        for (int w : t.in_neighbors(v)) pack.member_of[static_cast<std::size_t>(w)] = idx;
        pack.stars.push_back(Star{v, t.out_neighbors(v), t.in_neighbors(v)});
    }
    return pack;
}

StarPack translate_pack(const StarPack& pack, const std::vector<int>& to_original, int n_total) {
    StarPack out;
    out.member_of.assign(static_cast<std::size_t>(n_total), -1);
    out.stars.reserve(pack.stars.size());
    for (const Star& s : pack.stars) {
        Star ts;
        ts.center = to_original[static_cast<std::size_t>(s.center)];
        for (int l : s.out_leaves) ts.out_leaves.push_back(to_original[static_cast<std::size_t>(l)]);
        for (int l : s.in_leaves) ts.in_leaves.push_back(to_original[static_cast<std::size_t>(l)]);
        const int idx = out.size();
        out.member_of[static_cast<std::size_t>(ts.center)] = idx;
        for (int l : ts.out_leaves) out.member_of[static_cast<std::size_t>(l)] = idx;
        for (int l : ts.in_leaves) out.member_of[static_cast<std::size_t>(l)] = idx;
        out.stars.push_back(std::move(ts));
    }
    return out;
}

StarPack truncate_pack(const StarPack& pack, int max_stars, int n_vertices) {
    StarPack out;
    out.member_of.assign(static_cast<std::size_t>(n_vertices), -1);
    const int keep = std::min<int>(max_stars, pack.size());
    for (int i = 0; i < keep; ++i) {
        const Star& s = pack.stars[static_cast<std::size_t>(i)];
        out.member_of[static_cast<std::size_t>(s.center)] = i;
        for (int l : s.out_leaves) out.member_of[static_cast<std::size_t>(l)] = i;
        for (int l : s.in_leaves) out.member_of[static_cast<std::size_t>(l)] = i;
        out.stars.push_back(s);
    }
    return out;
}

namespace {

void require_mapped(const Star& star, const Embedding& phi) {
    auto check = [&](int v) {
        require(v < phi.tree_size() && phi.tree_mapped(v),
                "star vertex " + std::to_string(v) + " is not mapped");
    };
    check(star.center);
    for (int l : star.out_leaves) check(l);
    for (int l : star.in_leaves) check(l);
}

bool leaves_compatible(const Star& star, const Embedding& phi, const Digraph& g, int w) {
    for (int l : star.out_leaves)
        if (!g.has_edge(w, phi.image(l))) return false;
    for (int l : star.in_leaves)
        if (!g.has_edge(phi.image(l), w)) return false;
    return true;
}

}  // namespace

bool is_absorbing(const Star& star, const Embedding& phi, const Digraph& g, int u, Sign sign,
                  int w) {
    require_mapped(star, phi);
    const int cv = phi.image(star.center);
    const bool center_ok = sign == Sign::plus ? g.has_edge(u, cv) : g.has_edge(cv, u);
    return center_ok && leaves_compatible(star, phi, g, w);
}

long count_absorbing(const StarPack& pack, const std::vector<char>& used, const Embedding& phi,
                     const Digraph& g, int u, Sign sign, int w) {
    require(used.size() == pack.stars.size(), "used mask size mismatch");
    long c = 0;
    for (std::size_t i = 0; i < pack.stars.size(); ++i) {
        if (used[i]) continue;
        if (is_absorbing(pack.stars[i], phi, g, u, sign, w)) ++c;
    }
    return c;
}

MinAbsorbingResult min_absorbing_over_triples(const StarPack& pack, const Embedding& phi,
                                              const Digraph& g,
                                              const std::vector<int>& unembedded_hosts) {
    const int n = g.order();
    MinAbsorbingResult res;
    res.min_all = pack.size() + 1;
    std::vector<char> restricted(static_cast<std::size_t>(n), 0);
    for (int h : unembedded_hosts) restricted[static_cast<std::size_t>(h)] = 1;

    Bitset centers(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) {
        centers.clear();
        for (const Star& s : pack.stars)
            if (leaves_compatible(s, phi, g, w)) centers.set(static_cast<std::size_t>(phi.image(s.center)));
        for (int u = 0; u < n; ++u) {
            for (Sign sign : {Sign::plus, Sign::minus}) {
                const long c = static_cast<long>(centers.count_and(g.bits(u, sign)));
                if (c < res.min_all) {
                    res.min_all = c;
                    res.argmin_all = Triple{u, sign, w};
                }
                if (restricted[static_cast<std::size_t>(w)] &&
                    (!res.min_unembedded || c < *res.min_unembedded)) {
                    res.min_unembedded = c;
                    res.argmin_unembedded = Triple{u, sign, w};
                }
            }
        }
    }
    return res;
}

namespace detail {

MinAbsorbingResult min_absorbing_naive(const StarPack& pack, const Embedding& phi, const Digraph& g,
                                       const std::vector<int>& unembedded_hosts) {
    const int n = g.order();
    std::vector<char> used(pack.stars.size(), 0);
    std::vector<char> restricted(static_cast<std::size_t>(n), 0);
    for (int h : unembedded_hosts) restricted[static_cast<std::size_t>(h)] = 1;
    MinAbsorbingResult res;
    res.min_all = pack.size() + 1;
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w)
            for (Sign sign : {Sign::plus, Sign::minus}) {
                const long c = count_absorbing(pack, used, phi, g, u, sign, w);
                if (c < res.min_all) {
                    res.min_all = c;
                    res.argmin_all = Triple{u, sign, w};
                }
                if (restricted[static_cast<std::size_t>(w)] &&
                    (!res.min_unembedded || c < *res.min_unembedded)) {
                    res.min_unembedded = c;
                    res.argmin_unembedded = Triple{u, sign, w};
                }
            }
    return res;
}

std::optional<std::pair<long, Triple>> min_absorbing_restricted(const StarPack& pack,
                                                                const Embedding& phi,
                                                                const Digraph& g,
                                                                const std::vector<int>& hosts) {
    const int n = g.order();
    std::optional<std::pair<long, Triple>> best;
    Bitset centers(static_cast<std::size_t>(n));
    for (int w : hosts) {
        centers.clear();
        for (const Star& s : pack.stars)
            if (leaves_compatible(s, phi, g, w)) centers.set(static_cast<std::size_t>(phi.image(s.center)));
        for (int u = 0; u < n; ++u)
            for (Sign sign : {Sign::plus, Sign::minus}) {
                const long c = static_cast<long>(centers.count_and(g.bits(u, sign)));
                if (!best || c < best->first) best = {c, Triple{u, sign, w}};
            }
    }
    return best;
}

}  // namespace detail

long CompletionResult::min_step_count() const {
    long m = -1;
    for (const auto& s : steps)
        if (m < 0 || s.count_before < m) m = s.count_before;
    return m;
}

CompletionResult complete_embedding(const OrientedTree& t, const EdgeOrdering& ord,
                                    const Embedding& phi0, const Digraph& g, const StarPack& pack,
                                    bool debug_checks) {
    const int n = t.order();
    require(phi0.tree_size() == n, "embedding is not indexed by the tree's vertices");
    require(check_ordering(t, ord), "completion requires a valid ordering");
    require(pack.member_of.size() == static_cast<std::size_t>(n), "pack not indexed by tree vertices");

    const int mapped0 = phi0.mapped_count();
    const int missing = n - mapped0;
    const int prefix_edges = n - 1 - missing;
    require(prefix_edges >= 0, "embedding maps more vertices than the tree has");

    // phi0 must embed exactly the ordering's prefix.
    for (int i = 0; i < prefix_edges; ++i) {
        auto [u, v] = t.edge(ord.sequence[static_cast<std::size_t>(i)]);
        require(phi0.tree_mapped(u) && phi0.tree_mapped(v),
                "prefix edge endpoint unmapped at position " + std::to_string(i));
        require(g.has_edge(phi0.image(u), phi0.image(v)),
                "prefix edge image missing from host at position " + std::to_string(i));
    }
    for (const Star& s : pack.stars) require_mapped(s, phi0);

    CompletionResult result;
    if (missing == 0) {
        result.embedding = phi0;
        return result;
    }

    std::vector<int> fresh = phi0.unused_host_vertices();  // ascending
    if (static_cast<int>(fresh.size()) < missing) {
        result.failure = CompletionFailure{0, Triple{}, 0, "fewer unused host vertices than steps"};
        return result;
    }

    Embedding phi = phi0;
    std::vector<char> used(pack.stars.size(), 0);
    long used_count = 0;

    for (int j = 1; j <= missing; ++j) {
        const int edge_pos = prefix_edges + j - 1;
        auto [v1, v2] = t.edge(ord.sequence[static_cast<std::size_t>(edge_pos)]);
        const bool m1 = phi.tree_mapped(v1);
        const bool m2 = phi.tree_mapped(v2);
        require(!(m1 && m2), "next edge has both endpoints embedded; ordering/prefix mismatch");
        require(m1 || m2, "next edge has no embedded endpoint; ordering/prefix mismatch");
        const int attach = m1 ? v1 : v2;
        const int new_vertex = m1 ? v2 : v1;
        const Sign sign = m1 ? Sign::plus : Sign::minus;
        const int x = fresh[static_cast<std::size_t>(j - 1)];
        const Triple triple{phi.image(attach), sign, x};

        int star_idx = -1;
        long unused_remaining = 0;
        for (std::size_t s = 0; s < pack.stars.size(); ++s) {
            if (used[s]) continue;
            ++unused_remaining;
            if (star_idx < 0 && is_absorbing(pack.stars[s], phi, g, triple.u, triple.sign, triple.w))
                star_idx = static_cast<int>(s);
        }
        if (star_idx < 0) {
            result.failure = CompletionFailure{j, triple, unused_remaining, "no unused absorbing star"};
            return result;
        }

        const long count_before = count_absorbing(pack, used, phi, g, triple.u, triple.sign, triple.w);

        // The center moves to the fresh vertex; the new tree vertex takes
        // the center's old image. All star edges stay valid by the leaf
        // conditions, and the new tree edge lands on the center condition.
        const Star& star = pack.stars[static_cast<std::size_t>(star_idx)];
        const int old_center_image = phi.image(star.center);
        phi.unmap(star.center);
        phi.map(new_vertex, old_center_image);
        phi.map(star.center, x);

        int retired = 0;
        used[static_cast<std::size_t>(star_idx)] = 1;
        ++used_count;
        ++retired;
        const int attach_star = pack.member_of[static_cast<std::size_t>(attach)];
        if (attach_star >= 0 && pack.stars[static_cast<std::size_t>(attach_star)].center == attach &&
            !used[static_cast<std::size_t>(attach_star)]) {
            used[static_cast<std::size_t>(attach_star)] = 1;
            ++used_count;
            ++retired;
        }

        result.steps.push_back(CompletionStep{triple, star_idx, edge_pos, count_before, retired});

        if (debug_checks) {
            require(phi.mapped_count() == mapped0 + j, "image size must grow by one per step");
            for (int l = 0; l < j; ++l)
                require(phi.host_used(fresh[static_cast<std::size_t>(l)]),
                        "fresh vertex missing from image");
            require(used_count <= 2L * j, "more than 2j stars used after j steps");
            const long count_after =
                count_absorbing(pack, used, phi, g, triple.u, triple.sign, triple.w);
            require(count_before - count_after <= 2,
                    "absorbing count for the consumed triple dropped by more than 2");
            for (int i = 0; i <= edge_pos; ++i) {
                auto [a, b] = t.edge(ord.sequence[static_cast<std::size_t>(i)]);
                require(g.has_edge(phi.image(a), phi.image(b)),
                        "grown prefix no longer verifies after step " + std::to_string(j));
            }
        }
    }

    result.embedding = std::move(phi);
    return result;
}

}  // namespace rpd
