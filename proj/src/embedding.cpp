#include "rpd/embedding.hpp"

#include <numeric>
#include <string>

#include "rpd/rng.hpp"
#include "rpd/util.hpp"

namespace rpd {

void Embedding::map(int t, int h) {
    require(t >= 0 && t < tree_size() && h >= 0 && h < host_size(), "map endpoint out of range");
    require(!tree_mapped(t), "tree vertex " + std::to_string(t) + " already mapped");
    require(!host_used(h), "host vertex " + std::to_string(h) + " already used");
    fwd_[static_cast<std::size_t>(t)] = h;
    inv_[static_cast<std::size_t>(h)] = t;
    ++mapped_;
}

void Embedding::unmap(int t) {
    require(t >= 0 && t < tree_size() && tree_mapped(t), "unmap of an unmapped tree vertex");
    inv_[static_cast<std::size_t>(fwd_[static_cast<std::size_t>(t)])] = -1;
    fwd_[static_cast<std::size_t>(t)] = -1;
    --mapped_;
}

std::vector<int> Embedding::unmapped_tree_vertices() const {
    std::vector<int> out;
    for (int t = 0; t < tree_size(); ++t)
        if (!tree_mapped(t)) out.push_back(t);
    return out;
}

std::vector<int> Embedding::unused_host_vertices() const {
    std::vector<int> out;
    for (int h = 0; h < host_size(); ++h)
        if (!host_used(h)) out.push_back(h);
    return out;
}

VerifyReport verify_embedding_report(const OrientedTree& t, const Digraph& g, const Embedding& phi) {
    VerifyReport rep;
    for (int v = 0; v < t.order(); ++v)
        if (v >= phi.tree_size() || !phi.tree_mapped(v)) rep.unmapped.push_back(v);
    if (!rep.unmapped.empty()) return rep;
    for (const auto& [u, v] : t.edges()) {
        if (!g.has_edge(phi.image(u), phi.image(v))) {
            rep.violating_tree_edge = Edge{u, v};
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

bool verify_embedding(const OrientedTree& t, const Digraph& g, const Embedding& phi) {
    VerifyReport rep = verify_embedding_report(t, g, phi);
    if (!rep.unmapped.empty()) {
        std::string msg = "embedding is partial; unmapped tree vertices:";
        for (int v : rep.unmapped) msg += " " + std::to_string(v);
        throw std::invalid_argument(msg);
    }
    return rep.ok;
}

Embedding sample_uniform_injection(int tree_vertices, int host, std::uint64_t seed) {
    require(tree_vertices >= 0 && tree_vertices <= host,
            "injection needs tree_vertices <= host size");
    RandomStream stream(seed);
    std::vector<int> ids(static_cast<std::size_t>(host));
    std::iota(ids.begin(), ids.end(), 0);
    Embedding phi(tree_vertices, host);
    for (int i = 0; i < tree_vertices; ++i) {
        auto j = static_cast<std::size_t>(i) +
                 static_cast<std::size_t>(stream.below(static_cast<std::uint64_t>(host - i)));
        std::swap(ids[static_cast<std::size_t>(i)], ids[j]);
        phi.map(i, ids[static_cast<std::size_t>(i)]);
    }
    return phi;
}

}  // namespace rpd
