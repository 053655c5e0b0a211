#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rpd/digraph.hpp"
#include "rpd/tree.hpp"

namespace rpd {

// Partial injective map from tree vertices to host vertices, with its
// inverse kept in lock step. Edge validity is not stored here; it is checked
// by verify_embedding against an explicit graph, so one embedding can be
// validated against the random part alone or against the full host.
class Embedding {
public:
    Embedding(int tree_size, int host_size)
        : fwd_(static_cast<std::size_t>(tree_size), -1),
          inv_(static_cast<std::size_t>(host_size), -1) {}

    int tree_size() const { return static_cast<int>(fwd_.size()); }
    int host_size() const { return static_cast<int>(inv_.size()); }
    int mapped_count() const { return mapped_; }
    bool is_total() const { return mapped_ == tree_size(); }

    bool tree_mapped(int t) const { return fwd_[static_cast<std::size_t>(t)] >= 0; }
    bool host_used(int h) const { return inv_[static_cast<std::size_t>(h)] >= 0; }
    int image(int t) const { return fwd_[static_cast<std::size_t>(t)]; }
    int preimage(int h) const { return inv_[static_cast<std::size_t>(h)]; }

    void map(int t, int h);
    void unmap(int t);

    std::vector<int> unmapped_tree_vertices() const;
    std::vector<int> unused_host_vertices() const;

    bool operator==(const Embedding& other) const {
        return fwd_ == other.fwd_ && inv_ == other.inv_;
    }

private:
    std::vector<int> fwd_, inv_;
    int mapped_ = 0;
};

struct VerifyReport {
    bool ok = false;
    std::vector<int> unmapped;               // tree vertices without an image
    std::optional<Edge> violating_tree_edge;  // first tree edge whose image is missing
};

VerifyReport verify_embedding_report(const OrientedTree& t, const Digraph& g, const Embedding& phi);

// True iff phi is a total injective map of V(t) and every tree edge's
// oriented image is an edge of g. Throws if phi is partial, listing the
// unmapped vertices.
bool verify_embedding(const OrientedTree& t, const Digraph& g, const Embedding& phi);

// Exactly uniform injection of {0..tree_vertices-1} into {0..host-1}
// (partial Fisher-Yates). This deliberately ignores edges: it is the
// uniform-injection model the concentration experiments run under.
Embedding sample_uniform_injection(int tree_vertices, int host, std::uint64_t seed);

}  // namespace rpd
