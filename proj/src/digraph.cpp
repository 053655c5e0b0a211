#include "rpd/digraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rpd/util.hpp"

namespace rpd {

Digraph::Digraph(int n) : n_(n) {
    require(n >= 1, "digraph needs at least one vertex");
    out_.resize(static_cast<std::size_t>(n));
    in_.resize(static_cast<std::size_t>(n));
    out_bits_.assign(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
    in_bits_.assign(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
}

void Digraph::check_endpoints(int u, int v) const {
    require(u >= 0 && u < n_ && v >= 0 && v < n_,
            "edge endpoint out of range: (" + std::to_string(u) + "," + std::to_string(v) + ")");
    require(u != v, "self-loop rejected at vertex " + std::to_string(u));
}

bool Digraph::add_edge(int u, int v) {
    check_endpoints(u, v);
    if (has_edge(u, v)) return false;
    auto& ou = out_[u];
    ou.insert(std::lower_bound(ou.begin(), ou.end(), v), v);
    auto& iv = in_[v];
    iv.insert(std::lower_bound(iv.begin(), iv.end(), u), u);
    out_bits_[u].set(static_cast<std::size_t>(v));
    in_bits_[v].set(static_cast<std::size_t>(u));
    ++m_;
    return true;
}

Digraph Digraph::from_edges(int n, std::span<const Edge> edges) {
    Digraph d(n);
    for (const auto& [u, v] : edges) {
        d.check_endpoints(u, v);
        d.out_[u].push_back(v);
        d.in_[v].push_back(u);
    }
    for (int v = 0; v < n; ++v) {
        auto& ov = d.out_[v];
        std::sort(ov.begin(), ov.end());
        require(std::adjacent_find(ov.begin(), ov.end()) == ov.end(),
                "duplicate directed edge out of vertex " + std::to_string(v));
        for (int w : ov) d.out_bits_[v].set(static_cast<std::size_t>(w));
        auto& iv = d.in_[v];
        std::sort(iv.begin(), iv.end());
        for (int w : iv) d.in_bits_[v].set(static_cast<std::size_t>(w));
        d.m_ += static_cast<long long>(ov.size());
    }
    return d;
}

std::vector<Edge> Digraph::edges() const {
    std::vector<Edge> es;
    es.reserve(static_cast<std::size_t>(m_));
    for (int u = 0; u < n_; ++u)
        for (int v : out_[u]) es.emplace_back(u, v);
    return es;
}

bool Digraph::operator==(const Digraph& other) const {
    return n_ == other.n_ && m_ == other.m_ && out_ == other.out_;
}

int min_semidegree(const Digraph& d) {
    int best = d.order();
    for (int v = 0; v < d.order(); ++v)
        best = std::min(best, std::min(d.out_degree(v), d.in_degree(v)));
    return best;
}

Digraph graph_union(const Digraph& a, const Digraph& b) {
    require(a.order() == b.order(), "union requires graphs on the same vertex set");
    std::vector<Edge> es;
    es.reserve(static_cast<std::size_t>(a.edge_count() + b.edge_count()));
    for (int u = 0; u < a.order(); ++u) {
        const auto& ea = a.out_neighbors(u);
        const auto& eb = b.out_neighbors(u);
        std::vector<int> merged;
        merged.reserve(ea.size() + eb.size());
        std::set_union(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(merged));
        for (int v : merged) es.emplace_back(u, v);
    }
    return Digraph::from_edges(a.order(), es);
}

}  // namespace rpd
