#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rpd/digraph.hpp"
#include "rpd/embedding.hpp"
#include "rpd/tree.hpp"

namespace rpd {

// Full-neighborhood star of a tree vertex: the center together with all of
// its out- and in-neighbors in the tree.
struct Star {
    int center = -1;
    std::vector<int> out_leaves;  // tree out-neighbors of center
    std::vector<int> in_leaves;   // tree in-neighbors of center

    int size() const { return 1 + static_cast<int>(out_leaves.size() + in_leaves.size()); }

    bool operator==(const Star&) const = default;
};

// Vertex-disjoint collection of full-neighborhood stars. member_of maps each
// tree vertex to the star covering it (-1 if uncovered).
struct StarPack {
    std::vector<Star> stars;
    std::vector<int> member_of;

    int size() const { return static_cast<int>(stars.size()); }
};

// Greedy scan in ascending vertex order, accepting each vertex's star when
// disjoint from everything accepted so far. The result has at least
// n/(max_total_degree^2 + 1) stars.
StarPack greedy_star_pack(const OrientedTree& t);

// Re-expresses a pack built on a relabelled prefix tree in the original
// vertex ids.
StarPack translate_pack(const StarPack& pack, const std::vector<int>& to_original, int n_total);

// First max_stars stars of the pack (member_of rebuilt).
StarPack truncate_pack(const StarPack& pack, int max_stars, int n_vertices);

// (u, sign, w)-absorbing test: the center's image is a sign-neighbor of u,
// and every leaf image lies in the matching neighborhood of w, so w could
// take over the center's image while u gains an edge to it. Throws if a star
// vertex is unmapped.
bool is_absorbing(const Star& star, const Embedding& phi, const Digraph& g, int u, Sign sign, int w);

struct Triple {
    int u = -1;
    Sign sign = Sign::plus;
    int w = -1;

    bool operator==(const Triple&) const = default;
};

// Number of unused pack stars that are (u, sign, w)-absorbing.
long count_absorbing(const StarPack& pack, const std::vector<char>& used, const Embedding& phi,
                     const Digraph& g, int u, Sign sign, int w);

struct MinAbsorbingResult {
    long min_all = 0;  // over all (u, sign, w) with w ranging over every host vertex
    Triple argmin_all;
    std::optional<long> min_unembedded;  // w restricted to the given host set
    Triple argmin_unembedded;
};

// Minimum absorbing count over the full (u, sign, w) grid, plus the minimum
// restricted to w in `unembedded_hosts` (what completion actually consumes).
// Word-parallel: per w, a bitmask of leaf-compatible center images is
// intersected with each u-neighborhood row.
MinAbsorbingResult min_absorbing_over_triples(const StarPack& pack, const Embedding& phi,
                                              const Digraph& g,
                                              const std::vector<int>& unembedded_hosts);

namespace detail {

// Plain triple loop over count_absorbing; reference path for testing the
// bitset implementation.
MinAbsorbingResult min_absorbing_naive(const StarPack& pack, const Embedding& phi, const Digraph& g,
                                       const std::vector<int>& unembedded_hosts);

// Restricted grid only (u over all hosts, w over `hosts`); used by the
// pipeline at sizes where the full sweep is not wanted.
std::optional<std::pair<long, Triple>> min_absorbing_restricted(const StarPack& pack,
                                                                const Embedding& phi,
                                                                const Digraph& g,
                                                                const std::vector<int>& hosts);

}  // namespace detail

struct CompletionStep {
    Triple triple;
    int star_index = -1;
    int edge_index = -1;       // position in the ordering
    long count_before = 0;     // unused absorbing stars for this triple
    int retired = 0;           // stars newly marked used this step (1 or 2)
};

struct CompletionFailure {
    int step = 0;  // 1-based step at which no unused absorbing star existed
    Triple triple;
    long unused_remaining = 0;
    std::string reason;
};

struct CompletionResult {
    std::optional<Embedding> embedding;
    std::optional<CompletionFailure> failure;
    std::vector<CompletionStep> steps;

    bool success() const { return embedding.has_value(); }
    long min_step_count() const;  // smallest count_before over steps, -1 if none
};

// Extends an embedding of the ordering's prefix to the whole tree, one edge
// per step. Each step takes the lowest unused host vertex x, finds the first
// unused absorbing star for (image of attach vertex, direction, x), moves
// the star's center to x and hands the center's old image to the new tree
// vertex; the consumed star and the star centered at the attach vertex (if
// any) are marked used. With debug_checks, the step invariants are asserted
// after every step: images grow exactly by the fresh vertex, at most 2j
// stars are used after j steps, the consumed triple's count drops by at most
// 2, and the grown prefix still verifies.
CompletionResult complete_embedding(const OrientedTree& t, const EdgeOrdering& ord,
                                    const Embedding& phi0, const Digraph& g, const StarPack& pack,
                                    bool debug_checks = false);

}  // namespace rpd
