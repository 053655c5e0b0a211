#pragma once

#include <iosfwd>
#include <string>

#include "rpd/digraph.hpp"
#include "rpd/embedding.hpp"
#include "rpd/tree.hpp"

namespace rpd {

// Edge-list format: "digraph <n> <m>" then m lines "u v" (edge u->v),
// single spaces, newline-terminated, edges ascending by (u, v).
void write_digraph(std::ostream& os, const Digraph& d);
Digraph read_digraph(std::istream& is);

// Tree format: "tree <n>" then n-1 lines "tail head".
void write_tree(std::ostream& os, const OrientedTree& t);
OrientedTree read_tree(std::istream& is);

// Orderings: whitespace-separated edge indices on one line.
void write_ordering(std::ostream& os, const EdgeOrdering& ord);
EdgeOrdering read_ordering(std::istream& is);

// Embeddings: one line "tree_vertex host_vertex" per mapped vertex,
// ascending by tree vertex. The file carries no shape header; readers supply
// the tree and host sizes.
void write_embedding(std::ostream& os, const Embedding& phi);
Embedding read_embedding(std::istream& is, int tree_size, int host_size);

Digraph load_digraph(const std::string& path);
OrientedTree load_tree(const std::string& path);
Embedding load_embedding(const std::string& path, int tree_size, int host_size);
void save_digraph(const std::string& path, const Digraph& d);
void save_tree(const std::string& path, const OrientedTree& t);
void save_embedding(const std::string& path, const Embedding& phi);

}  // namespace rpd
