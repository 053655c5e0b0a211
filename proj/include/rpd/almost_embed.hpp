#pragma once

#include <cstdint>
#include <optional>

#include "rpd/embedding.hpp"
#include "rpd/tree.hpp"

namespace rpd {

struct RetryPolicy {
    long backtrack_budget = 100000;  // vertex un-placements allowed per attempt
    int max_restarts = 20;           // fresh-root attempts after the first

    bool operator==(const RetryPolicy&) const = default;
};

struct AlmostEmbedResult {
    std::optional<Embedding> embedding;
    int deepest_prefix_edges = 0;  // best prefix length reached across attempts
    int restarts_used = 0;
    long backtracks_used = 0;

    bool success() const { return embedding.has_value(); }
};

// Embeds the tree into `r` edge by edge along the given valid ordering.
// The first edge's tail is placed uniformly at random; each later edge picks
// a uniformly random unused vertex in the matching neighborhood of its
// already-placed endpoint. Dead ends backtrack (up to the policy budget per
// attempt), exhausted attempts restart from a fresh random root. The failure
// result carries the deepest prefix reached as a diagnostic.
AlmostEmbedResult embed_almost(const OrientedTree& t, const EdgeOrdering& ord, const Digraph& r,
                               std::uint64_t seed, const RetryPolicy& policy);

}  // namespace rpd
