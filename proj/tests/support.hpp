#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rpd/absorption.hpp"
#include "rpd/almost_embed.hpp"
#include "rpd/digraph.hpp"
#include "rpd/embedding.hpp"
#include "rpd/random_models.hpp"
#include "rpd/rng.hpp"
#include "rpd/tree.hpp"
#include "rpd/tree_gen.hpp"

namespace rpd::testsupport {

// Canonical key of the underlying labelled tree (sorted undirected edges).
inline std::string underlying_key(const OrientedTree& t) {
    std::vector<std::pair<int, int>> es;
    for (auto [u, v] : t.edges()) es.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(es.begin(), es.end());
    std::string key;
    for (auto [u, v] : es) key += std::to_string(u) + "-" + std::to_string(v) + ";";
    return key;
}

inline double chi_square(const std::map<std::string, long>& observed, double expected_per_cell,
                         long total_cells) {
    double stat = 0.0;
    long seen_cells = 0;
    for (const auto& [key, cnt] : observed) {
        const double d = static_cast<double>(cnt) - expected_per_cell;
        stat += d * d / expected_per_cell;
        ++seen_cells;
    }
    // Cells never hit still contribute their expectation.
    stat += static_cast<double>(total_cells - seen_cells) * expected_per_cell;
    return stat;
}

// Completion instance where the absorbing hypothesis can be measured: a
// bounded-degree random tree, a dense host, an embedding of the ordering's
// prefix with `missing` vertices left over, and the full greedy pack in
// original ids.
struct EngineeredInstance {
    OrientedTree tree;
    EdgeOrdering ord;
    Digraph host;
    Embedding phi0;
    StarPack pack;
    int missing = 0;
    long min_all_triples = 0;
};

// Builds a candidate instance; returns nothing when the prefix embedding
// fails. Whether min_all_triples clears the 2*missing bar is the caller's
// filter.
inline std::optional<EngineeredInstance> engineer_completion_instance(std::uint64_t seed) {
    RandomStream stream(seed);
    const int n = 20 + static_cast<int>(stream.below(41));   // 20..60
    const int delta = 3 + static_cast<int>(stream.below(2));  // 3..4
    const int missing = 1 + static_cast<int>(stream.below(3));  // 1..3
    const double p_host = stream.next_unit() < 0.5 ? 0.9 : 0.95;

    OrientedTree tree = random_tree(n, delta, derive_seed(seed, "tree"));
    EdgeOrdering ord = valid_ordering(tree, 0);
    Digraph host = graph_union(dense_base(n, 0.45, BaseStyle::doubled_bipartite, 0),
                               sample_binomial_digraph(n, p_host, derive_seed(seed, "host")));

    const int prefix_edges = n - 1 - missing;
    PrefixSubtree prefix = prefix_subtree(tree, ord, prefix_edges);
    RetryPolicy policy{20000, 10};
    AlmostEmbedResult ar = embed_almost(prefix.tree, identity_ordering(prefix_edges), host,
                                        derive_seed(seed, "embed"), policy);
    if (!ar.success()) return std::nullopt;

    Embedding phi0(n, n);
    for (int sv = 0; sv < prefix.tree.order(); ++sv)
        phi0.map(prefix.to_original[static_cast<std::size_t>(sv)], ar.embedding->image(sv));

    StarPack pack = translate_pack(greedy_star_pack(prefix.tree), prefix.to_original, n);
    MinAbsorbingResult mres =
        min_absorbing_over_triples(pack, phi0, host, phi0.unused_host_vertices());

    return EngineeredInstance{std::move(tree), std::move(ord),    std::move(host), std::move(phi0),
                              std::move(pack), missing, mres.min_all};
}

}  // namespace rpd::testsupport
