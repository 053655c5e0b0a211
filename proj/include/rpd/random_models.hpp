#pragma once

#include <cstdint>
#include <string>

#include "rpd/digraph.hpp"

namespace rpd {

// Binomial random digraph: each of the n(n-1) ordered pairs is an edge
// independently with probability p. Pure function of (n, p, seed); the draw
// for a pair is addressed by its index, so graphs replay bit-identically.
Digraph sample_binomial_digraph(int n, double p, std::uint64_t seed);

// Mirrored model: for each unordered pair, both directed edges are included
// together with probability p, else neither. Samples are reversal-invariant.
Digraph sample_mirrored_digraph(int n, double p, std::uint64_t seed);

// All 2ab edges between parts {0..a-1} and {a..a+b-1}, both directions.
Digraph doubled_complete_bipartite(int a, int b);

enum class BaseStyle { doubled_bipartite, blown_cycle, random_repair };

BaseStyle base_style_from_string(const std::string& s);
std::string to_string(BaseStyle s);

// Dense base digraph with min_semidegree >= ceil(alpha*n).
//  doubled-bipartite  parts ceil(alpha*n) and the rest, all cross edges doubled
//  blown-cycle        consistently oriented blow-up of a directed cycle with
//                     blobs of size ceil(3*alpha*n), leftover spread over blobs
//  random-repair      D(n, 3*alpha) plus greedy ascending fill-in for
//                     semidegree-deficient vertices
Digraph dense_base(int n, double alpha, BaseStyle style, std::uint64_t seed);

// Base plus fresh random edges R ~ D(n, c/n). The random part is kept
// separate so the almost-embedding phase can be restricted to it.
struct Perturbed {
    Digraph graph;        // base union random_part
    Digraph random_part;  // R alone
};

Perturbed perturb(const Digraph& base, double c, std::uint64_t seed);

namespace detail {

enum class PairSampling { automatic, per_pair, geometric };

// The geometric path skips over pair indices with Geometric(p) gaps; it is
// distributionally identical to the per-pair path and cheaper for small p.
Digraph sample_binomial_impl(int n, double p, std::uint64_t seed, PairSampling method);

}  // namespace detail

}  // namespace rpd
