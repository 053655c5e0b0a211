#pragma once

#include <optional>

#include "rpd/digraph.hpp"
#include "rpd/embedding.hpp"
#include "rpd/tree.hpp"

namespace rpd {

struct OracleResult {
    bool contains = false;
    std::optional<Embedding> witness;
};

// Exact containment decision by exhaustive backtracking over injective maps,
// processed in valid-ordering order from a tree center with (out,in)-degree
// feasibility pruning. Guarded by `limit` to keep accidental exponential
// blowups out; the first witness found is returned and re-verified.
OracleResult contains_tree_bruteforce(const OrientedTree& t, const Digraph& g, int limit = 12);

// Center of the underlying tree (smaller id if there are two); used as the
// oracle's search root.
int tree_center(const OrientedTree& t);

}  // namespace rpd
