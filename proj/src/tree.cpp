#include "rpd/tree.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "rpd/util.hpp"

namespace rpd {

OrientedTree OrientedTree::from_edges(int n, std::vector<Edge> edges) {
    require(n >= 1, "tree needs at least one vertex");
    require(static_cast<int>(edges.size()) == n - 1,
            "tree on " + std::to_string(n) + " vertices needs exactly " + std::to_string(n - 1) +
                " edges, got " + std::to_string(edges.size()));
    OrientedTree t;
    t.n_ = n;
    t.edges_ = std::move(edges);
    t.out_.resize(static_cast<std::size_t>(n));
    t.in_.resize(static_cast<std::size_t>(n));
    t.und_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n - 1; ++i) {
        auto [u, v] = t.edges_[static_cast<std::size_t>(i)];
        require(u >= 0 && u < n && v >= 0 && v < n, "tree edge endpoint out of range");
        require(u != v, "tree edge is a self-loop");
        t.out_[static_cast<std::size_t>(u)].push_back(v);
        t.in_[static_cast<std::size_t>(v)].push_back(u);
        t.und_[static_cast<std::size_t>(u)].emplace_back(v, i);
        t.und_[static_cast<std::size_t>(v)].emplace_back(u, i);
    }
    for (int v = 0; v < n; ++v) {
        auto& a = t.und_[static_cast<std::size_t>(v)];
        std::sort(a.begin(), a.end());
        std::sort(t.out_[static_cast<std::size_t>(v)].begin(), t.out_[static_cast<std::size_t>(v)].end());
        std::sort(t.in_[static_cast<std::size_t>(v)].begin(), t.in_[static_cast<std::size_t>(v)].end());
        t.max_total_degree_ = std::max(t.max_total_degree_, t.total_degree(v));
    }
    // Connectivity; together with the edge count this certifies a tree.
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [w, idx] : t.und_[static_cast<std::size_t>(v)]) {
            (void)idx;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                q.push(w);
            }
        }
    }
    require(reached == n, "tree edges do not connect all vertices");
    return t;
}

EdgeOrdering identity_ordering(int edge_count) {
    EdgeOrdering ord;
    ord.sequence.resize(static_cast<std::size_t>(edge_count));
    for (int i = 0; i < edge_count; ++i) ord.sequence[static_cast<std::size_t>(i)] = i;
    return ord;
}

EdgeOrdering valid_ordering(const OrientedTree& t, int root) {
    require(root >= 0 && root < t.order(), "ordering root out of range");
    EdgeOrdering ord;
    ord.sequence.reserve(static_cast<std::size_t>(t.edge_count()));
    std::vector<char> seen(static_cast<std::size_t>(t.order()), 0);
    std::queue<int> q;
    q.push(root);
    seen[static_cast<std::size_t>(root)] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [w, idx] : t.underlying(v)) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ord.sequence.push_back(idx);
                q.push(w);
            }
        }
    }
    return ord;
}

bool check_ordering(const OrientedTree& t, const EdgeOrdering& ord) {
    const int m = t.edge_count();
    require(static_cast<int>(ord.sequence.size()) == m, "ordering length mismatch");
    std::vector<char> used(static_cast<std::size_t>(m), 0);
    for (int idx : ord.sequence) {
        require(idx >= 0 && idx < m, "ordering contains an out-of-range edge index");
        require(!used[static_cast<std::size_t>(idx)], "ordering repeats an edge index");
        used[static_cast<std::size_t>(idx)] = 1;
    }
    if (m <= 1) return true;
    std::vector<char> in_prefix(static_cast<std::size_t>(t.order()), 0);
    auto [t0, h0] = t.edge(ord.sequence[0]);
    in_prefix[static_cast<std::size_t>(t0)] = 1;
    in_prefix[static_cast<std::size_t>(h0)] = 1;
    for (int i = 1; i < m; ++i) {
        auto [u, v] = t.edge(ord.sequence[static_cast<std::size_t>(i)]);
        int shared = in_prefix[static_cast<std::size_t>(u)] + in_prefix[static_cast<std::size_t>(v)];
        if (shared != 1) return false;
        in_prefix[static_cast<std::size_t>(u)] = 1;
        in_prefix[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

PrefixSubtree prefix_subtree(const OrientedTree& t, const EdgeOrdering& ord, int k) {
    require(k >= 1 && k <= t.edge_count(), "prefix length out of range");
    require(check_ordering(t, ord), "prefix requires a valid ordering");
    std::vector<int> to_original;
    std::vector<int> to_sub(static_cast<std::size_t>(t.order()), -1);
    auto sub_id = [&](int orig) {
        if (to_sub[static_cast<std::size_t>(orig)] < 0) {
            to_sub[static_cast<std::size_t>(orig)] = static_cast<int>(to_original.size());
            to_original.push_back(orig);
        }
        return to_sub[static_cast<std::size_t>(orig)];
    };
    std::vector<Edge> sub_edges;
    sub_edges.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        auto [u, v] = t.edge(ord.sequence[static_cast<std::size_t>(i)]);
        int su = sub_id(u);
        int sv = sub_id(v);
        sub_edges.emplace_back(su, sv);
    }
    return PrefixSubtree{OrientedTree::from_edges(k + 1, std::move(sub_edges)),
                         std::move(to_original)};
}

}  // namespace rpd
