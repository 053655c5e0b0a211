#include "rpd/text_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rpd/util.hpp"

namespace rpd {

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    require(f.good(), "cannot open for reading: " + path);
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    require(f.good(), "cannot open for writing: " + path);
    return f;
}

void expect_keyword(std::istream& is, const std::string& kw) {
    std::string got;
    is >> got;
    require(static_cast<bool>(is) && got == kw, "expected '" + kw + "' header, got '" + got + "'");
}

}  // namespace

void write_digraph(std::ostream& os, const Digraph& d) {
    os << "digraph " << d.order() << " " << d.edge_count() << "\n";
    for (const auto& [u, v] : d.edges()) os << u << " " << v << "\n";
}

Digraph read_digraph(std::istream& is) {
    expect_keyword(is, "digraph");
    int n = 0;
    long long m = 0;
    is >> n >> m;
    require(static_cast<bool>(is) && n >= 1 && m >= 0, "malformed digraph header");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        int u = 0, v = 0;
        is >> u >> v;
        require(static_cast<bool>(is), "truncated digraph edge list");
        edges.emplace_back(u, v);
    }
    return Digraph::from_edges(n, edges);
}

void write_tree(std::ostream& os, const OrientedTree& t) {
    os << "tree " << t.order() << "\n";
    for (const auto& [u, v] : t.edges()) os << u << " " << v << "\n";
}

OrientedTree read_tree(std::istream& is) {
    expect_keyword(is, "tree");
    int n = 0;
    is >> n;
    require(static_cast<bool>(is) && n >= 1, "malformed tree header");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) - 1);
    for (int i = 0; i + 1 < n; ++i) {
        int u = 0, v = 0;
        is >> u >> v;
        require(static_cast<bool>(is), "truncated tree edge list");
        edges.emplace_back(u, v);
    }
    return OrientedTree::from_edges(n, std::move(edges));
}

void write_ordering(std::ostream& os, const EdgeOrdering& ord) {
    for (std::size_t i = 0; i < ord.sequence.size(); ++i) {
        if (i) os << " ";
        os << ord.sequence[i];
    }
    os << "\n";
}

EdgeOrdering read_ordering(std::istream& is) {
    EdgeOrdering ord;
    int idx = 0;
    while (is >> idx) ord.sequence.push_back(idx);
    return ord;
}

void write_embedding(std::ostream& os, const Embedding& phi) {
    for (int t = 0; t < phi.tree_size(); ++t)
        if (phi.tree_mapped(t)) os << t << " " << phi.image(t) << "\n";
}

Embedding read_embedding(std::istream& is, int tree_size, int host_size) {
    Embedding phi(tree_size, host_size);
    int t = 0, h = 0;
    while (is >> t >> h) phi.map(t, h);
    return phi;
}

Digraph load_digraph(const std::string& path) {
    auto f = open_in(path);
    return read_digraph(f);
}

OrientedTree load_tree(const std::string& path) {
    auto f = open_in(path);
    return read_tree(f);
}

Embedding load_embedding(const std::string& path, int tree_size, int host_size) {
    auto f = open_in(path);
    return read_embedding(f, tree_size, host_size);
}

void save_digraph(const std::string& path, const Digraph& d) {
    auto f = open_out(path);
    write_digraph(f, d);
}

void save_tree(const std::string& path, const OrientedTree& t) {
    auto f = open_out(path);
    write_tree(f, t);
}

void save_embedding(const std::string& path, const Embedding& phi) {
    auto f = open_out(path);
    write_embedding(f, phi);
}

}  // namespace rpd
