#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpd/tree.hpp"

namespace rpd {

// Uniformly random labelled tree conditioned on maximum underlying degree
// <= max_degree, with each edge then oriented independently and uniformly.
//
// Sampling goes through the Pruefer bijection: degree caps translate to
// per-symbol multiplicity caps on the sequence. The symbol-count profile is
// drawn from its exact conditional distribution (a capped-occupancy DP in
// log space), a uniform arrangement of the resulting multiset is taken, and
// the sequence is decoded. Plain rejection on unconstrained sequences is
// exactly uniform too but its acceptance rate vanishes already at
// (n, max_degree) = (50, 2); the profile sampler handles every feasible pair.
OrientedTree random_tree(int n, int max_degree, std::uint64_t seed);

enum class TreeFamily { directed_path, anti_directed_path, out_spider, binary_out_tree, caterpillar };

TreeFamily tree_family_from_string(const std::string& s);
std::string to_string(TreeFamily f);

// Deterministic stress families.
//  directed-path      0->1->...->n-1
//  anti-directed-path edge directions alternate along the path
//  out-spider         up to three paths oriented away from vertex 0
//  binary-out-tree    heap-shaped complete binary tree oriented away from 0
//  caterpillar        directed spine, one out-leaf hung on each spine vertex
OrientedTree family_tree(TreeFamily kind, int n);

namespace detail {

// Rejection sampler over unconstrained Pruefer sequences; exactly uniform on
// the conditioned space but only usable when the acceptance rate is decent.
// Kept as an independent oracle for distribution tests at small n.
OrientedTree random_tree_rejection(int n, int max_degree, std::uint64_t seed);

// Decodes a Pruefer sequence over 0..n-1 (length n-2) into undirected edges.
std::vector<Edge> pruefer_decode(int n, const std::vector<int>& seq);

}  // namespace detail

}  // namespace rpd
