#include <doctest.h>

#include <cmath>

#include "rpd/oracle.hpp"
#include "rpd/random_models.hpp"
#include "rpd/rng.hpp"
#include "rpd/stats.hpp"
#include "rpd/tree_gen.hpp"

using namespace rpd;

TEST_CASE("binomial digraph edge cases and purity") {
    CHECK(sample_binomial_digraph(10, 0.0, 1).edge_count() == 0);
    CHECK(sample_binomial_digraph(10, 1.0, 1).edge_count() == 90);
    CHECK(sample_binomial_digraph(40, 0.2, 7) == sample_binomial_digraph(40, 0.2, 7));
    CHECK_FALSE(sample_binomial_digraph(40, 0.2, 7) == sample_binomial_digraph(40, 0.2, 8));
    CHECK_THROWS_AS(sample_binomial_digraph(10, 1.5, 1), std::invalid_argument);
}

TEST_CASE("binomial digraph mean edge count at n=50, p=0.1") {
    const int samples = 10000;
    RunningStat stat;
    for (int i = 0; i < samples; ++i)
        stat.push(static_cast<double>(
            sample_binomial_digraph(50, 0.1, derive_seed(3, "mean", static_cast<std::uint64_t>(i)))
                .edge_count()));
    const double expected = 2450.0 * 0.1;
    const double sigma_mean = std::sqrt(2450.0 * 0.1 * 0.9) / std::sqrt(samples);
    CHECK(std::abs(stat.mean - expected) < 4.0 * sigma_mean);
}

TEST_CASE("mirrored model is reversal-invariant") {
    CHECK(sample_mirrored_digraph(6, 1.0, 0).edge_count() == 30);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Digraph d = sample_mirrored_digraph(12, 0.4, seed);
        for (int u = 0; u < 12; ++u)
            for (int v = 0; v < 12; ++v)
                if (u != v) CHECK(d.has_edge(u, v) == d.has_edge(v, u));
    }
}

TEST_CASE("mirrored model: fixed triangle probability is p cubed") {
    const int samples = 100000;
    long hits = 0;
    for (int i = 0; i < samples; ++i) {
        Digraph d =
            sample_mirrored_digraph(5, 0.3, derive_seed(11, "tri", static_cast<std::uint64_t>(i)));
        if (d.has_edge(0, 1) && d.has_edge(1, 2) && d.has_edge(0, 2)) ++hits;
    }
    const double expected = 0.3 * 0.3 * 0.3;
    const double sigma = std::sqrt(expected * (1.0 - expected) / samples);
    CHECK(std::abs(static_cast<double>(hits) / samples - expected) < 3.0 * sigma);
}

TEST_CASE("doubled complete bipartite") {
    Digraph d = doubled_complete_bipartite(2, 3);
    CHECK(d.edge_count() == 12);
    CHECK(min_semidegree(d) == 2);

    Digraph two_cycle = doubled_complete_bipartite(1, 1);
    CHECK(two_cycle.edge_count() == 2);
    CHECK(two_cycle.has_edge(0, 1));
    CHECK(two_cycle.has_edge(1, 0));

    Digraph square = doubled_complete_bipartite(2, 2);
    CHECK(min_semidegree(square) == 2);
    for (int v = 0; v < 4; ++v) {
        CHECK(square.out_degree(v) == 2);
        CHECK(square.in_degree(v) == 2);
    }
}

TEST_CASE("dense base styles meet the semidegree target") {
    CHECK(min_semidegree(dense_base(10, 0.3, BaseStyle::doubled_bipartite, 0)) == 3);

    for (std::uint64_t seed = 0; seed < 100; ++seed)
        CHECK(min_semidegree(dense_base(100, 0.25, BaseStyle::random_repair, seed)) >= 25);

    Digraph blown = dense_base(60, 0.1, BaseStyle::blown_cycle, 0);
    CHECK(min_semidegree(blown) >= 6);

    CHECK_THROWS_AS(dense_base(10, 0.6, BaseStyle::doubled_bipartite, 0), std::invalid_argument);
    CHECK_THROWS_AS(dense_base(10, 0.5, BaseStyle::blown_cycle, 0), std::invalid_argument);
}

TEST_CASE("perturb keeps the base and returns the random part") {
    Digraph base = dense_base(30, 0.2, BaseStyle::doubled_bipartite, 0);
    Perturbed p0 = perturb(base, 0.0, 5);
    CHECK(p0.random_part.edge_count() == 0);
    CHECK(p0.graph == base);

    Perturbed p = perturb(base, 6.0, 5);
    for (auto [u, v] : base.edges()) CHECK(p.graph.has_edge(u, v));
    for (auto [u, v] : p.random_part.edges()) CHECK(p.graph.has_edge(u, v));

    CHECK_THROWS_AS(perturb(base, 31.0, 5), std::invalid_argument);
}

TEST_CASE("perturb mean random-edge count at n=200, c=10") {
    Digraph base(200);
    const int samples = 1000;
    RunningStat stat;
    for (int i = 0; i < samples; ++i)
        stat.push(static_cast<double>(
            perturb(base, 10.0, derive_seed(21, "pc", static_cast<std::uint64_t>(i)))
                .random_part.edge_count()));
    const double expected = 39800.0 * 0.05;
    const double sigma_mean = std::sqrt(39800.0 * 0.05 * 0.95) / std::sqrt(samples);
    CHECK(std::abs(stat.mean - expected) < 4.0 * sigma_mean);
}

TEST_CASE("geometric skipping matches per-pair sampling in distribution") {
    const int n = 60;
    const double p = 0.03;
    const int samples = 4000;
    RunningStat per_pair, geometric;
    for (int i = 0; i < samples; ++i) {
        const auto seed = derive_seed(33, "skip", static_cast<std::uint64_t>(i));
        per_pair.push(static_cast<double>(
            detail::sample_binomial_impl(n, p, seed, detail::PairSampling::per_pair).edge_count()));
        geometric.push(static_cast<double>(
            detail::sample_binomial_impl(n, p, derive_seed(seed, "g"), detail::PairSampling::geometric)
                .edge_count()));
    }
    const double expected = n * (n - 1) * p;
    const double sigma = std::sqrt(n * (n - 1) * p * (1 - p));
    const double sigma_mean = sigma / std::sqrt(samples);
    CHECK(std::abs(per_pair.mean - expected) < 4.0 * sigma_mean);
    CHECK(std::abs(geometric.mean - expected) < 4.0 * sigma_mean);
    CHECK(std::abs(per_pair.mean - geometric.mean) < 4.0 * sigma_mean * std::sqrt(2.0));
}

TEST_CASE("coupling: the independent model dominates the mirrored model") {
    const int samples = 100000;
    OrientedTree path = family_tree(TreeFamily::directed_path, 4);
    long hits_d = 0, hits_star = 0;
    for (int i = 0; i < samples; ++i) {
        Digraph d =
            sample_binomial_digraph(5, 0.3, derive_seed(51, "cd", static_cast<std::uint64_t>(i)));
        if (contains_tree_bruteforce(path, d).contains) ++hits_d;
        Digraph m =
            sample_mirrored_digraph(5, 0.3, derive_seed(51, "cm", static_cast<std::uint64_t>(i)));
        if (contains_tree_bruteforce(path, m).contains) ++hits_star;
    }
    const double pd = static_cast<double>(hits_d) / samples;
    const double pm = static_cast<double>(hits_star) / samples;
    const double sigma = std::sqrt(pd * (1 - pd) / samples + pm * (1 - pm) / samples);
    CHECK(pd >= pm - 3.0 * sigma);
}
