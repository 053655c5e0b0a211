#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rpd/absorption.hpp"
#include "rpd/digraph.hpp"
#include "rpd/embedding.hpp"
#include "rpd/tree.hpp"

namespace rpd {

// n * (n-1) * ... * (n-i+1); the number of i-length injections into an
// n-set. i = 0 gives 1, i > n gives 0 (no injection exists). Computed in
// 128-bit and required to fit in 64 bits.
std::uint64_t falling_factorial(long long n, long long i);

// Exact fraction with reduced representation.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

struct GoodStarParams {
    int n = 0;
    double alpha = 0.0;
    double alpha_prime = 0.0;  // alpha / 3
    double gamma = 0.0;
    int n_cap = 0;  // ceil(min(gamma*n, alpha*n / (6*(delta+1))))
    int delta = 0;

    static GoodStarParams make(int n, double alpha, double gamma, int delta);
};

// Residual designated-set and host fractions after part of an injection has
// been exposed.
struct ResidualFractions {
    double a_star = 0.0, a_plus = 0.0, a_minus = 0.0;
    double b = 1.0;
};

// Probability that a star with the given leaf counts lands with its center
// in the residual center set and its leaves in the residual out/in sets,
// under a uniform injection into the residual host:
//   a*n * (a+n)^(s+ falling) * (a-n)^(s- falling) / (bn)^(s falling),
// s = s_plus + s_minus + 1. Falling factorials are evaluated exactly before
// the single floating division.
double conditional_good_probability(const ResidualFractions& res, int s_plus, int s_minus, int n);
Rational conditional_good_probability_rational(const ResidualFractions& res, int s_plus,
                                               int s_minus, int n);

// Unexposed case: all three designated sets of size alpha_prime*n, full host.
double good_star_probability(const GoodStarParams& p, int s_plus, int s_minus);
Rational good_star_probability_rational(const GoodStarParams& p, int s_plus, int s_minus);

// Sum of good_star_probability over a (s_plus, s_minus) profile.
double expected_good_stars(const GoodStarParams& p, std::span<const std::pair<int, int>> profile);

// Azuma-Hoeffding tail for N steps with difference bound L at deviation eps,
// clamped to 1: min(1, 2*exp(-eps^2 / (2*N*L^2))).
double azuma_tail(long long steps, double diff_bound, double deviation);

// Pairwise-disjoint designated sets: the first `target_size` elements of
// N^sign(u), then of N^+(w) avoiding the first set, then of N^-(w) avoiding
// both. Greedy and deterministic so trials replay.
struct DesignatedSets {
    std::vector<int> center_set, out_set, in_set;
    Bitset center_bits, out_bits, in_bits;
};

DesignatedSets pick_designated_sets(const Digraph& d, int u, Sign sign, int w, int target_size);

// Good-star count for one injection against fixed designated sets.
long count_good(const StarPack& pack, const Embedding& phi, const DesignatedSets& sets);

struct TripleStats {
    Triple triple;
    double mean = 0.0;
    double stddev = 0.0;
    long min_count = 0;
    long max_count = 0;
    double deviation_prob = 0.0;  // empirical Pr[X < E[X]/2]
};

struct ConcentrationReport {
    int n = 0;
    int trials = 0;
    int star_count = 0;         // N actually used
    double expected = 0.0;      // closed-form E[X] (identical for every triple)
    double model_variance = 0.0;  // exact Var[X] from pairwise joint placements
    double azuma_bound = 0.0;   // azuma_tail(N, 1 + c4_estimate, E[X]/2)
    double measured_max_diff = 0.0;   // max |M_k - M_{k-1}| seen in exposure replay
    double c4_estimate = 0.0;         // max tail shift sum_{i>k} |dE[X_i]|
    double crude_diff_bound = 0.0;    // sandwich bound at observed residuals
    bool diff_exceeds_crude = false;
    std::vector<TripleStats> per_triple;
    std::vector<long> histogram;  // pooled counts of X over (trial, triple)
    long min_observed = 0;
    double max_deviation_prob = 0.0;

    double quantile(double q) const;  // pooled count quantile
};

// Uniform-injection Monte Carlo for the good-star count. The pack is
// truncated to p.n_cap stars; designated sets have size floor(alpha*n/3)
// each (rejected when smaller than delta+1, since no star would fit). The
// exposure martingale is replayed star by star on every trial to measure the
// largest single-star difference, which feeds the reported Azuma bound.
ConcentrationReport run_concentration_experiment(const Digraph& d_base, const OrientedTree& tp,
                                                 const StarPack& pack, const GoodStarParams& p,
                                                 std::span<const Triple> triples, int trials,
                                                 std::uint64_t seed);

// Default triple sample: `random_count` uniform triples plus `adversarial`
// ones with u == w.
std::vector<Triple> sample_triples(int n, int random_count, int adversarial, std::uint64_t seed);

}  // namespace rpd
