#include "rpd/almost_embed.hpp"

#include <algorithm>
#include <numeric>

#include "rpd/rng.hpp"
#include "rpd/util.hpp"

namespace rpd {

namespace {

struct Frame {
    int tree_vertex = -1;          // vertex this frame places
    std::vector<int> candidates;   // shuffled host candidates
    std::size_t next = 0;
    bool placed = false;
};

}  // namespace

AlmostEmbedResult embed_almost(const OrientedTree& t, const EdgeOrdering& ord, const Digraph& r,
                               std::uint64_t seed, const RetryPolicy& policy) {
    require(t.order() <= r.order(), "tree larger than host");
    require(check_ordering(t, ord), "embed requires a valid ordering");

    const int k = t.edge_count();
    AlmostEmbedResult result;

    for (int attempt = 0; attempt <= policy.max_restarts; ++attempt) {
        RandomStream stream(derive_seed(seed, "attempt", static_cast<std::uint64_t>(attempt)));
        Embedding phi(t.order(), r.order());
        long backtracks = 0;

        std::vector<Frame> frames(static_cast<std::size_t>(k) + 1);
        {
            Frame& root = frames[0];
            root.tree_vertex = t.edge(ord.sequence[0]).first;
            root.candidates.resize(static_cast<std::size_t>(r.order()));
            std::iota(root.candidates.begin(), root.candidates.end(), 0);
            stream.shuffle(root.candidates);
        }

        int idx = 0;
        bool giving_up = false;
        while (!giving_up) {
            Frame& f = frames[static_cast<std::size_t>(idx)];
            if (f.placed) {
                phi.unmap(f.tree_vertex);
                f.placed = false;
            }
            int h = -1;
            while (f.next < f.candidates.size()) {
                int cand = f.candidates[f.next++];
                if (!phi.host_used(cand)) {
                    h = cand;
                    break;
                }
            }
            if (h < 0) {
                if (idx == 0) break;  // root exhausted: attempt over
                // Heavy-tailed backjump: mostly one level, occasionally far,
                // so endgame dead ends can re-randomize mid-range choices
                // instead of grinding siblings inside one deep trap.
                long jump = 1;
                while (jump < 256 && stream.below(4) == 0) jump *= 4;
                while (jump-- > 0 && idx > 0 && !giving_up) {
                    --idx;
                    Frame& pf = frames[static_cast<std::size_t>(idx)];
                    if (pf.placed) {
                        phi.unmap(pf.tree_vertex);
                        pf.placed = false;
                    }
                    if (++backtracks > policy.backtrack_budget) giving_up = true;
                }
                continue;
            }
            phi.map(f.tree_vertex, h);
            f.placed = true;
            result.deepest_prefix_edges = std::max(result.deepest_prefix_edges, idx);
            if (idx == k) {
                result.embedding = std::move(phi);
                result.restarts_used = attempt;
                result.backtracks_used += backtracks;
                return result;
            }
            ++idx;
            // Fresh frame for the next edge: exactly one endpoint is placed.
            auto [tail, head] = t.edge(ord.sequence[static_cast<std::size_t>(idx - 1)]);
            Frame& nf = frames[static_cast<std::size_t>(idx)];
            bool tail_placed = phi.tree_mapped(tail);
            int attach = tail_placed ? tail : head;
            nf.tree_vertex = tail_placed ? head : tail;
            nf.candidates = r.neighbors(phi.image(attach), tail_placed ? Sign::plus : Sign::minus);
            stream.shuffle(nf.candidates);
            nf.next = 0;
            nf.placed = false;
        }
        result.restarts_used = attempt;
        result.backtracks_used += backtracks;
    }
    return result;
}

}  // namespace rpd
