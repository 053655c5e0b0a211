#pragma once

#include <utility>
#include <vector>

#include "rpd/digraph.hpp"

namespace rpd {

// Oriented tree: a digraph whose underlying undirected graph is a tree.
// Vertices are 0..n-1; edges are stored as (tail, head) in a fixed indexable
// order so that edge orderings can refer to them by index.
class OrientedTree {
public:
    static OrientedTree from_edges(int n, std::vector<Edge> edges);

    int order() const { return n_; }
    int edge_count() const { return n_ - 1; }
    const Edge& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }
    const std::vector<Edge>& edges() const { return edges_; }

    int max_total_degree() const { return max_total_degree_; }
    int total_degree(int v) const { return out_degree(v) + in_degree(v); }
    int out_degree(int v) const { return static_cast<int>(out_[static_cast<std::size_t>(v)].size()); }
    int in_degree(int v) const { return static_cast<int>(in_[static_cast<std::size_t>(v)].size()); }

    const std::vector<int>& out_neighbors(int v) const { return out_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& in_neighbors(int v) const { return in_[static_cast<std::size_t>(v)]; }

    // Underlying undirected adjacency as (neighbor, edge index), sorted by
    // neighbor id.
    const std::vector<std::pair<int, int>>& underlying(int v) const {
        return und_[static_cast<std::size_t>(v)];
    }

    bool operator==(const OrientedTree& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    OrientedTree() = default;

    int n_ = 0;
    int max_total_degree_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_, in_;
    std::vector<std::vector<std::pair<int, int>>> und_;
};

// Permutation of a tree's edge indices. A valid ordering satisfies prefix
// connectivity: every non-initial edge shares exactly one endpoint with the
// union of its predecessors.
struct EdgeOrdering {
    std::vector<int> sequence;

    bool operator==(const EdgeOrdering& other) const = default;
};

EdgeOrdering identity_ordering(int edge_count);

// Deterministic valid ordering: breadth-first from `root`, neighbors taken in
// ascending vertex order.
EdgeOrdering valid_ordering(const OrientedTree& t, int root);

// True iff prefix connectivity holds at every step. Throws if `ord` is not a
// permutation of the tree's edge indices.
bool check_ordering(const OrientedTree& t, const EdgeOrdering& ord);

// Prefix subtree on the first k edges of a valid ordering, relabelled to
// dense ids 0..k in order of first appearance; to_original maps them back.
// The identity ordering is valid for the returned tree.
struct PrefixSubtree {
    OrientedTree tree;
    std::vector<int> to_original;
};

PrefixSubtree prefix_subtree(const OrientedTree& t, const EdgeOrdering& ord, int k);

}  // namespace rpd
