#include "rpd/random_models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rpd/rng.hpp"
#include "rpd/util.hpp"

namespace rpd {

namespace {

// Ordered pairs (u,v), u != v, enumerated ascending: index = u*(n-1) + v',
// where v' drops the diagonal slot.
Edge ordered_pair_at(int n, long long idx) {
    int u = static_cast<int>(idx / (n - 1));
    int r = static_cast<int>(idx % (n - 1));
    int v = r + (r >= u ? 1 : 0);
    return {u, v};
}

// Unordered pairs {u < v} enumerated ascending by (u, v).
Edge unordered_pair_at(int n, long long idx) {
    // Row u starts at offset u*n - u*(u+1)/2 - u... walk rows directly; n is
    // small enough that the loop never matters.
    int u = 0;
    long long row = n - 1;
    while (idx >= row) {
        idx -= row;
        --row;
        ++u;
    }
    return {u, u + 1 + static_cast<int>(idx)};
}

void check_probability(double p) {
    require(p >= 0.0 && p <= 1.0, "edge probability out of [0,1]");
}

constexpr double kGeometricThreshold = 0.05;

template <typename Emit>
void bernoulli_over_indices(long long total, double p, std::uint64_t seed,
                            detail::PairSampling method, Emit&& emit) {
    if (p <= 0.0) return;
    if (p >= 1.0) {
        for (long long i = 0; i < total; ++i) emit(i);
        return;
    }
    bool geometric = method == detail::PairSampling::geometric ||
                     (method == detail::PairSampling::automatic && p < kGeometricThreshold);
    if (!geometric) {
        for (long long i = 0; i < total; ++i)
            if (unit_at(seed, static_cast<std::uint64_t>(i)) < p) emit(i);
        return;
    }
    RandomStream stream(seed);
    const double log1mp = std::log1p(-p);
    long long i = 0;
    while (true) {
        double u = stream.next_unit();
        // Number of misses before the next hit.
        long long gap = static_cast<long long>(std::floor(std::log1p(-u) / log1mp));
        i += gap;
        if (i >= total) break;
        emit(i);
        ++i;
    }
}

}  // namespace

namespace detail {

Digraph sample_binomial_impl(int n, double p, std::uint64_t seed, PairSampling method) {
    require(n >= 1, "digraph needs at least one vertex");
    check_probability(p);
    const long long total = static_cast<long long>(n) * (n - 1);
    std::vector<Edge> edges;
    bernoulli_over_indices(total, p, seed, method,
                           [&](long long idx) { edges.push_back(ordered_pair_at(n, idx)); });
    return Digraph::from_edges(n, edges);
}

}  // namespace detail

Digraph sample_binomial_digraph(int n, double p, std::uint64_t seed) {
    return detail::sample_binomial_impl(n, p, seed, detail::PairSampling::automatic);
}

Digraph sample_mirrored_digraph(int n, double p, std::uint64_t seed) {
    require(n >= 1, "digraph needs at least one vertex");
    check_probability(p);
    const long long total = static_cast<long long>(n) * (n - 1) / 2;
    std::vector<Edge> edges;
    bernoulli_over_indices(total, p, seed, detail::PairSampling::automatic, [&](long long idx) {
        auto [u, v] = unordered_pair_at(n, idx);
        edges.emplace_back(u, v);
        edges.emplace_back(v, u);
    });
    return Digraph::from_edges(n, edges);
}

Digraph doubled_complete_bipartite(int a, int b) {
    require(a >= 1 && b >= 1, "both parts need at least one vertex");
    std::vector<Edge> edges;
    edges.reserve(2LL * a * b);
    for (int u = 0; u < a; ++u)
        for (int v = a; v < a + b; ++v) {
            edges.emplace_back(u, v);
            edges.emplace_back(v, u);
        }
    return Digraph::from_edges(a + b, edges);
}

BaseStyle base_style_from_string(const std::string& s) {
    if (s == "doubled-bipartite") return BaseStyle::doubled_bipartite;
    if (s == "blown-cycle") return BaseStyle::blown_cycle;
    if (s == "random-repair") return BaseStyle::random_repair;
    throw std::invalid_argument("unknown base style: " + s);
}

std::string to_string(BaseStyle s) {
    switch (s) {
        case BaseStyle::doubled_bipartite: return "doubled-bipartite";
        case BaseStyle::blown_cycle: return "blown-cycle";
        case BaseStyle::random_repair: return "random-repair";
    }
    throw std::logic_error("unreachable");
}

Digraph dense_base(int n, double alpha, BaseStyle style, std::uint64_t seed) {
    require(n >= 2, "dense base needs n >= 2");
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
    const int target = static_cast<int>(ceil_count(alpha * n));
    require(target <= n - 1, "alpha infeasible: ceil(alpha*n) > n-1");
    switch (style) {
        case BaseStyle::doubled_bipartite: {
            const int a = target;
            const int b = n - a;
            require(a <= b, "doubled-bipartite infeasible: small part would set the semidegree");
            return doubled_complete_bipartite(a, b);
        }
        case BaseStyle::blown_cycle: {
            const int blob = static_cast<int>(ceil_count(3.0 * alpha * n));
            const int k = blob > 0 ? n / blob : 0;
            require(k >= 3, "blown-cycle infeasible: fewer than three blobs at this alpha");
            std::vector<int> sizes(static_cast<std::size_t>(k), blob);
            int leftover = n - k * blob;
            for (int i = 0; i < leftover; ++i) ++sizes[static_cast<std::size_t>(i % k)];
            std::vector<int> start(static_cast<std::size_t>(k) + 1, 0);
            for (int i = 0; i < k; ++i) start[static_cast<std::size_t>(i) + 1] =
                start[static_cast<std::size_t>(i)] + sizes[static_cast<std::size_t>(i)];
            std::vector<Edge> edges;
            for (int i = 0; i < k; ++i) {
                const int j = (i + 1) % k;
                for (int u = start[static_cast<std::size_t>(i)]; u < start[static_cast<std::size_t>(i) + 1]; ++u)
                    for (int v = start[static_cast<std::size_t>(j)]; v < start[static_cast<std::size_t>(j) + 1]; ++v)
                        edges.emplace_back(u, v);
            }
            return Digraph::from_edges(n, edges);
        }
        case BaseStyle::random_repair: {
            Digraph g = sample_binomial_digraph(n, std::min(1.0, 3.0 * alpha),
                                                derive_seed(seed, "repair-base"));
            for (int v = 0; v < n; ++v) {
                for (int w = 0; g.out_degree(v) < target; ++w) {
                    if (w == v || g.has_edge(v, w)) continue;
                    g.add_edge(v, w);
                }
                for (int w = 0; g.in_degree(v) < target; ++w) {
                    if (w == v || g.has_edge(w, v)) continue;
                    g.add_edge(w, v);
                }
            }
            return g;
        }
    }
    throw std::logic_error("unreachable");
}

Perturbed perturb(const Digraph& base, double c, std::uint64_t seed) {
    require(c >= 0.0, "c must be nonnegative");
    const int n = base.order();
    const double p = c / n;
    require(p <= 1.0, "c/n exceeds 1");
    Digraph r = sample_binomial_digraph(n, p, seed);
    return Perturbed{graph_union(base, r), std::move(r)};
}

}  // namespace rpd
