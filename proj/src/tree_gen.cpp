#include "rpd/tree_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "rpd/rng.hpp"
#include "rpd/util.hpp"

namespace rpd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct CountTable {
    int n = 0, cap = 0;
    std::vector<double> logfact;            // 0..n
    std::vector<std::vector<double>> logw;  // logw[k][j]: length-j sequences over k capped symbols
};

double log_sum_exp(const std::vector<double>& v) {
    double m = kNegInf;
    for (double x : v) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

std::shared_ptr<const CountTable> capped_count_table(int n, int cap) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const CountTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, cap);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    auto t = std::make_shared<CountTable>();
    t->n = n;
    t->cap = cap;
    t->logfact.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) t->logfact[static_cast<std::size_t>(i)] = std::lgamma(i + 1.0);
    const int m = n - 2;
    t->logw.assign(static_cast<std::size_t>(n) + 1,
                   std::vector<double>(static_cast<std::size_t>(m) + 1, kNegInf));
    t->logw[0][0] = 0.0;
    std::vector<double> terms;
    for (int k = 1; k <= n; ++k) {
        for (int j = 0; j <= m; ++j) {
            terms.clear();
            for (int c = 0; c <= std::min(cap, j); ++c) {
                double prev = t->logw[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - c)];
                if (prev == kNegInf) continue;
                double log_choose = t->logfact[static_cast<std::size_t>(j)] -
                                    t->logfact[static_cast<std::size_t>(c)] -
                                    t->logfact[static_cast<std::size_t>(j - c)];
                terms.push_back(log_choose + prev);
            }
            t->logw[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = log_sum_exp(terms);
        }
    }
    cache[key] = t;
    return t;
}

// Multiplicities of each symbol in a uniformly random capped sequence,
// sampled one symbol at a time from exact conditional weights.
std::vector<int> sample_count_profile(const CountTable& t, RandomStream& stream) {
    const int n = t.n;
    const int m = n - 2;
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    int remaining = m;
    std::vector<double> lw;
    for (int v = 0; v < n; ++v) {
        const int k_rest = n - 1 - v;
        const int tmax = std::min(t.cap, remaining);
        lw.assign(static_cast<std::size_t>(tmax) + 1, kNegInf);
        for (int c = 0; c <= tmax; ++c) {
            double rest = t.logw[static_cast<std::size_t>(k_rest)][static_cast<std::size_t>(remaining - c)];
            if (rest == kNegInf) continue;
            double log_choose = t.logfact[static_cast<std::size_t>(remaining)] -
                                t.logfact[static_cast<std::size_t>(c)] -
                                t.logfact[static_cast<std::size_t>(remaining - c)];
            lw[static_cast<std::size_t>(c)] = log_choose + rest;
        }
        double mx = kNegInf;
        for (double x : lw) mx = std::max(mx, x);
        require(mx != kNegInf, "unreachable count-profile state");
        double total = 0.0;
        for (double& x : lw) {
            x = (x == kNegInf) ? 0.0 : std::exp(x - mx);
            total += x;
        }
        double u = stream.next_unit() * total;
        int chosen = -1;
        for (int c = 0; c <= tmax; ++c) {
            if (lw[static_cast<std::size_t>(c)] == 0.0) continue;
            chosen = c;  // rounding at the tail keeps the last feasible count
            u -= lw[static_cast<std::size_t>(c)];
            if (u <= 0.0) break;
        }
        counts[static_cast<std::size_t>(v)] = chosen;
        remaining -= chosen;
    }
    return counts;
}

OrientedTree orient_edges(const std::vector<Edge>& undirected, int n, RandomStream& stream) {
    std::vector<Edge> oriented;
    oriented.reserve(undirected.size());
    for (auto [a, b] : undirected) {
        if (stream.next_unit() < 0.5)
            oriented.emplace_back(a, b);
        else
            oriented.emplace_back(b, a);
    }
    return OrientedTree::from_edges(n, std::move(oriented));
}

}  // namespace

namespace detail {

std::vector<Edge> pruefer_decode(int n, const std::vector<int>& seq) {
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    for (int s : seq) ++deg[static_cast<std::size_t>(s)];
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) - 1);
    int ptr = 0;
    while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
    int leaf = ptr;
    for (int s : seq) {
        edges.emplace_back(leaf, s);
        if (--deg[static_cast<std::size_t>(s)] == 1 && s < ptr) {
            leaf = s;
        } else {
            ++ptr;
            while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.emplace_back(leaf, n - 1);
    return edges;
}

OrientedTree random_tree_rejection(int n, int max_degree, std::uint64_t seed) {
    require(n >= 2, "random tree needs n >= 2");
    RandomStream stream(seed);
    if (n == 2) {
        require(max_degree >= 1, "degree bound below 1 is infeasible");
        return orient_edges({{0, 1}}, 2, stream);
    }
    require(max_degree >= 2, "degree bound 1 is infeasible for n >= 3");
    const int cap = max_degree - 1;
    std::vector<int> seq(static_cast<std::size_t>(n) - 2);
    std::vector<int> mult(static_cast<std::size_t>(n));
    while (true) {
        std::fill(mult.begin(), mult.end(), 0);
        bool ok = true;
        for (auto& s : seq) {
            s = static_cast<int>(stream.below(static_cast<std::uint64_t>(n)));
            if (++mult[static_cast<std::size_t>(s)] > cap) ok = false;
        }
        if (!ok) continue;
        return orient_edges(pruefer_decode(n, seq), n, stream);
    }
}

}  // namespace detail

OrientedTree random_tree(int n, int max_degree, std::uint64_t seed) {
    require(n >= 2, "random tree needs n >= 2");
    RandomStream stream(seed);
    if (n == 2) {
        require(max_degree >= 1, "degree bound below 1 is infeasible");
        return orient_edges({{0, 1}}, 2, stream);
    }
    require(max_degree >= 2, "degree bound 1 is infeasible for n >= 3");
    const int m = n - 2;
    const int cap = max_degree - 1;
    std::vector<int> seq;
    seq.reserve(static_cast<std::size_t>(m));
    if (cap >= m) {
        // Cap can never bind: plain uniform sequence.
        for (int i = 0; i < m; ++i)
            seq.push_back(static_cast<int>(stream.below(static_cast<std::uint64_t>(n))));
    } else {
        auto table = capped_count_table(n, cap);
        std::vector<int> counts = sample_count_profile(*table, stream);
        for (int v = 0; v < n; ++v)
            seq.insert(seq.end(), static_cast<std::size_t>(counts[static_cast<std::size_t>(v)]), v);
        // Every arrangement of the multiset is one distinct sequence, so a
        // uniform shuffle is uniform over sequences with this profile.
        stream.shuffle(seq);
    }
    return orient_edges(detail::pruefer_decode(n, seq), n, stream);
}

TreeFamily tree_family_from_string(const std::string& s) {
    if (s == "directed-path") return TreeFamily::directed_path;
    if (s == "anti-directed-path") return TreeFamily::anti_directed_path;
    if (s == "out-spider") return TreeFamily::out_spider;
    if (s == "binary-out-tree") return TreeFamily::binary_out_tree;
    if (s == "caterpillar") return TreeFamily::caterpillar;
    throw std::invalid_argument("unknown tree family: " + s);
}

std::string to_string(TreeFamily f) {
    switch (f) {
        case TreeFamily::directed_path: return "directed-path";
        case TreeFamily::anti_directed_path: return "anti-directed-path";
        case TreeFamily::out_spider: return "out-spider";
        case TreeFamily::binary_out_tree: return "binary-out-tree";
        case TreeFamily::caterpillar: return "caterpillar";
    }
    throw std::logic_error("unreachable");
}

OrientedTree family_tree(TreeFamily kind, int n) {
    require(n >= 2, "family trees need n >= 2");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n) - 1);
    switch (kind) {
        case TreeFamily::directed_path:
            for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
            break;
        case TreeFamily::anti_directed_path:
            for (int i = 0; i + 1 < n; ++i) {
                if (i % 2 == 0)
                    edges.emplace_back(i, i + 1);
                else
                    edges.emplace_back(i + 1, i);
            }
            break;
        case TreeFamily::out_spider: {
            const int legs = std::min(3, n - 1);
            // Consecutive id runs per leg, as equal as possible, oriented
            // away from the hub.
            int next = 1;
            for (int l = 0; l < legs; ++l) {
                int len = (n - 1) / legs + (l < (n - 1) % legs ? 1 : 0);
                int prev = 0;
                for (int j = 0; j < len; ++j) {
                    edges.emplace_back(prev, next);
                    prev = next++;
                }
            }
            break;
        }
        case TreeFamily::binary_out_tree:
            for (int i = 0; i < n; ++i) {
                if (2 * i + 1 < n) edges.emplace_back(i, 2 * i + 1);
                if (2 * i + 2 < n) edges.emplace_back(i, 2 * i + 2);
            }
            break;
        case TreeFamily::caterpillar: {
            const int spine = (n + 1) / 2;
            for (int i = 0; i + 1 < spine; ++i) edges.emplace_back(i, i + 1);
            for (int j = 0; spine + j < n; ++j) edges.emplace_back(j, spine + j);
            break;
        }
    }
    return OrientedTree::from_edges(n, std::move(edges));
}

}  // namespace rpd
