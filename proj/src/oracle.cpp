#include "rpd/oracle.hpp"

#include <algorithm>
#include <vector>

#include "rpd/util.hpp"

namespace rpd {

int tree_center(const OrientedTree& t) {
    const int n = t.order();
    if (n == 1) return 0;
    std::vector<int> degree(static_cast<std::size_t>(n));
    std::vector<int> layer, next;
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        degree[static_cast<std::size_t>(v)] = static_cast<int>(t.underlying(v).size());
        if (degree[static_cast<std::size_t>(v)] <= 1) layer.push_back(v);
    }
    int alive = n;
    while (alive > 2) {
        next.clear();
        for (int v : layer) {
            removed[static_cast<std::size_t>(v)] = 1;
            --alive;
            for (auto [w, idx] : t.underlying(v)) {
                (void)idx;
                if (removed[static_cast<std::size_t>(w)]) continue;
                if (--degree[static_cast<std::size_t>(w)] == 1) next.push_back(w);
            }
        }
        layer.swap(next);
    }
    int best = n;
    for (int v = 0; v < n; ++v)
        if (!removed[static_cast<std::size_t>(v)]) best = std::min(best, v);
    return best;
}

namespace {

struct Searcher {
    const OrientedTree& t;
    const Digraph& g;
    const EdgeOrdering& ord;
    Embedding phi;

    Searcher(const OrientedTree& tree, const Digraph& host, const EdgeOrdering& ordering)
        : t(tree), g(host), ord(ordering), phi(tree.order(), host.order()) {}

    bool feasible(int tree_v, int host_v) const {
        return g.out_degree(host_v) >= t.out_degree(tree_v) &&
               g.in_degree(host_v) >= t.in_degree(tree_v);
    }

    bool extend(int pos) {
        if (pos == t.edge_count()) return true;
        auto [tail, head] = t.edge(ord.sequence[static_cast<std::size_t>(pos)]);
        const bool tail_placed = phi.tree_mapped(tail);
        const int attach = tail_placed ? tail : head;
        const int next = tail_placed ? head : tail;
        const auto& cands = g.neighbors(phi.image(attach), tail_placed ? Sign::plus : Sign::minus);
        for (int h : cands) {
            if (phi.host_used(h) || !feasible(next, h)) continue;
            phi.map(next, h);
            if (extend(pos + 1)) return true;
            phi.unmap(next);
        }
        return false;
    }
};

}  // namespace

OracleResult contains_tree_bruteforce(const OrientedTree& t, const Digraph& g, int limit) {
    require(t.order() <= g.order(), "tree larger than host");
    require(g.order() <= limit, "host exceeds the brute-force limit");

    if (t.order() == 1) {
        OracleResult r;
        r.contains = g.order() >= 1;
        Embedding phi(1, g.order());
        phi.map(0, 0);
        r.witness = std::move(phi);
        return r;
    }

    const int root = tree_center(t);
    const EdgeOrdering ord = valid_ordering(t, root);
    Searcher search(t, g, ord);
    for (int h = 0; h < g.order(); ++h) {
        if (!search.feasible(root, h)) continue;
        search.phi.map(root, h);
        if (search.extend(0)) {
            OracleResult r;
            r.contains = true;
            r.witness = search.phi;
            require(verify_embedding(t, g, *r.witness), "oracle produced an invalid witness");
            return r;
        }
        search.phi.unmap(root);
    }
    return OracleResult{};
}

}  // namespace rpd
