#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rpd/bitset.hpp"

namespace rpd {

// Which side of a vertex's neighborhood an operation refers to.
enum class Sign : std::uint8_t { plus, minus };

inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

using Edge = std::pair<int, int>;  // (tail, head): tail -> head

// Directed graph on dense vertex ids 0..n-1. At most one copy of each
// directed edge; the antiparallel pair (u,v),(v,u) may coexist. Neighbor
// lists are kept sorted and mirrored by per-vertex bit rows, so membership
// is O(1) and subset checks against a neighborhood cost O(degree/64) words.
// Instances are immutable after construction; add_edge exists for
// single-owner construction only.
class Digraph {
public:
    explicit Digraph(int n);
    static Digraph from_edges(int n, std::span<const Edge> edges);

    int order() const { return n_; }
    long long edge_count() const { return m_; }

    // True if the edge was new; false if it was already present. Throws on
    // self-loops and out-of-range endpoints.
    bool add_edge(int u, int v);

    bool has_edge(int u, int v) const { return out_bits_[u].test(static_cast<std::size_t>(v)); }

    const std::vector<int>& out_neighbors(int v) const { return out_[v]; }
    const std::vector<int>& in_neighbors(int v) const { return in_[v]; }
    const std::vector<int>& neighbors(int v, Sign s) const {
        return s == Sign::plus ? out_[v] : in_[v];
    }

    const Bitset& out_bits(int v) const { return out_bits_[v]; }
    const Bitset& in_bits(int v) const { return in_bits_[v]; }
    const Bitset& bits(int v, Sign s) const { return s == Sign::plus ? out_bits_[v] : in_bits_[v]; }

    int out_degree(int v) const { return static_cast<int>(out_[v].size()); }
    int in_degree(int v) const { return static_cast<int>(in_[v].size()); }

    std::vector<Edge> edges() const;  // ascending (tail, head)

    bool operator==(const Digraph& other) const;

private:
    void check_endpoints(int u, int v) const;

    int n_ = 0;
    long long m_ = 0;
    std::vector<std::vector<int>> out_, in_;
    std::vector<Bitset> out_bits_, in_bits_;
};

// min over vertices of min(out-degree, in-degree).
int min_semidegree(const Digraph& d);

// Edge-set union of two graphs on the same vertex set.
Digraph graph_union(const Digraph& a, const Digraph& b);

}  // namespace rpd
