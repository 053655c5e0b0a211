#include "rpd/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "rpd/rng.hpp"
#include "rpd/util.hpp"

namespace rpd {

std::uint64_t falling_factorial(long long n, long long i) {
    require(n >= 0 && i >= 0, "falling factorial needs nonnegative arguments");
    if (i > n) return 0;  // no injection of i elements into an n-set
    unsigned __int128 prod = 1;
    for (long long k = 0; k < i; ++k) {
        prod *= static_cast<unsigned __int128>(n - k);
        require(prod <= std::numeric_limits<std::uint64_t>::max(),
                "falling factorial overflows 64 bits");
    }
    return static_cast<std::uint64_t>(prod);
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
    require(d != 0, "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

GoodStarParams GoodStarParams::make(int n, double alpha, double gamma, int delta) {
    require(n >= 1, "n must be positive");
    require(alpha > 0.0 && alpha <= 1.0, "alpha out of range");
    require(gamma > 0.0 && gamma <= 1.0, "gamma out of range");
    require(delta >= 1, "degree bound must be positive");
    GoodStarParams p;
    p.n = n;
    p.alpha = alpha;
    p.alpha_prime = alpha / 3.0;
    p.gamma = gamma;
    p.delta = delta;
    p.n_cap = static_cast<int>(
        ceil_count(std::min(gamma * n, alpha * n / (6.0 * (delta + 1)))));
    require(p.n_cap >= 1, "star-count cap must be at least 1 (gamma*n < 1)");
    return p;
}

namespace {

struct GoodCounts {
    long long center = 0, out = 0, in = 0, host = 0;
};

// Exact numerator/denominator for the good-star probability at integer set
// sizes; one floating division at the end.
double cond_from_counts(const GoodCounts& c, int s_plus, int s_minus) {
    const long long s = s_plus + s_minus + 1;
    if (c.host < s) return 0.0;
    const unsigned __int128 num = static_cast<unsigned __int128>(std::max(0LL, c.center)) *
                                  falling_factorial(std::max(0LL, c.out), s_plus) *
                                  falling_factorial(std::max(0LL, c.in), s_minus);
    const std::uint64_t den = falling_factorial(c.host, s);
    return static_cast<double>(num) / static_cast<double>(den);
}

GoodCounts counts_from_fractions(const ResidualFractions& res, int n) {
    return GoodCounts{round_count(res.a_star * n), round_count(res.a_plus * n),
                      round_count(res.a_minus * n), round_count(res.b * n)};
}

}  // namespace

double conditional_good_probability(const ResidualFractions& res, int s_plus, int s_minus, int n) {
    require(s_plus >= 0 && s_minus >= 0, "leaf counts must be nonnegative");
    require(n >= 1, "n must be positive");
    return cond_from_counts(counts_from_fractions(res, n), s_plus, s_minus);
}

Rational conditional_good_probability_rational(const ResidualFractions& res, int s_plus,
                                               int s_minus, int n) {
    require(s_plus >= 0 && s_minus >= 0, "leaf counts must be nonnegative");
    require(n >= 1, "n must be positive");
    const GoodCounts c = counts_from_fractions(res, n);
    const long long s = s_plus + s_minus + 1;
    if (c.host < s) return Rational(0, 1);
    const unsigned __int128 num = static_cast<unsigned __int128>(std::max(0LL, c.center)) *
                                  falling_factorial(std::max(0LL, c.out), s_plus) *
                                  falling_factorial(std::max(0LL, c.in), s_minus);
    require(num <= static_cast<unsigned __int128>(std::numeric_limits<long long>::max()),
            "rational numerator overflows");
    const std::uint64_t den = falling_factorial(c.host, s);
    require(den <= static_cast<std::uint64_t>(std::numeric_limits<long long>::max()),
            "rational denominator overflows");
    return Rational(static_cast<long long>(num), static_cast<long long>(den));
}

double good_star_probability(const GoodStarParams& p, int s_plus, int s_minus) {
    return conditional_good_probability(
        ResidualFractions{p.alpha_prime, p.alpha_prime, p.alpha_prime, 1.0}, s_plus, s_minus, p.n);
}

Rational good_star_probability_rational(const GoodStarParams& p, int s_plus, int s_minus) {
    return conditional_good_probability_rational(
        ResidualFractions{p.alpha_prime, p.alpha_prime, p.alpha_prime, 1.0}, s_plus, s_minus, p.n);
}

double expected_good_stars(const GoodStarParams& p,
                           std::span<const std::pair<int, int>> profile) {
    double sum = 0.0;
    for (const auto& [sp, sm] : profile) sum += good_star_probability(p, sp, sm);
    return sum;
}

double azuma_tail(long long steps, double diff_bound, double deviation) {
    require(steps >= 1, "step count must be positive");
    require(diff_bound > 0.0, "difference bound must be positive");
    require(deviation >= 0.0, "deviation must be nonnegative");
    const double raw =
        2.0 * std::exp(-(deviation * deviation) /
                       (2.0 * static_cast<double>(steps) * diff_bound * diff_bound));
    return std::min(1.0, raw);
}

DesignatedSets pick_designated_sets(const Digraph& d, int u, Sign sign, int w, int target_size) {
    const int n = d.order();
    DesignatedSets sets;
    sets.center_bits = Bitset(static_cast<std::size_t>(n));
    sets.out_bits = Bitset(static_cast<std::size_t>(n));
    sets.in_bits = Bitset(static_cast<std::size_t>(n));
    auto take = [&](const std::vector<int>& from, std::vector<int>& into, Bitset& bits,
                    auto&& excluded) {
        for (int v : from) {
            if (static_cast<int>(into.size()) == target_size) break;
            if (excluded(v)) continue;
            into.push_back(v);
            bits.set(static_cast<std::size_t>(v));
        }
        require(static_cast<int>(into.size()) == target_size,
                "neighborhood too small for a designated set of size " +
                    std::to_string(target_size));
    };
    take(d.neighbors(u, sign), sets.center_set, sets.center_bits, [](int) { return false; });
    take(d.out_neighbors(w), sets.out_set, sets.out_bits,
         [&](int v) { return sets.center_bits.test(static_cast<std::size_t>(v)); });
    take(d.in_neighbors(w), sets.in_set, sets.in_bits, [&](int v) {
        return sets.center_bits.test(static_cast<std::size_t>(v)) ||
               sets.out_bits.test(static_cast<std::size_t>(v));
    });
    return sets;
}

namespace {

bool star_good(const Star& s, const Embedding& phi, const DesignatedSets& sets) {
    if (!sets.center_bits.test(static_cast<std::size_t>(phi.image(s.center)))) return false;
    for (int l : s.out_leaves)
        if (!sets.out_bits.test(static_cast<std::size_t>(phi.image(l)))) return false;
    for (int l : s.in_leaves)
        if (!sets.in_bits.test(static_cast<std::size_t>(phi.image(l)))) return false;
    return true;
}

}  // namespace

long count_good(const StarPack& pack, const Embedding& phi, const DesignatedSets& sets) {
    long c = 0;
    for (const Star& s : pack.stars)
        if (star_good(s, phi, sets)) ++c;
    return c;
}

std::vector<Triple> sample_triples(int n, int random_count, int adversarial, std::uint64_t seed) {
    RandomStream stream(seed);
    std::vector<Triple> out;
    out.reserve(static_cast<std::size_t>(random_count + adversarial));
    for (int i = 0; i < random_count; ++i) {
        Triple t;
        t.u = static_cast<int>(stream.below(static_cast<std::uint64_t>(n)));
        t.w = static_cast<int>(stream.below(static_cast<std::uint64_t>(n)));
        t.sign = stream.next_unit() < 0.5 ? Sign::plus : Sign::minus;
        out.push_back(t);
    }
    for (int i = 0; i < adversarial; ++i) {
        Triple t;
        t.u = static_cast<int>(stream.below(static_cast<std::uint64_t>(n)));
        t.w = t.u;
        t.sign = stream.next_unit() < 0.5 ? Sign::plus : Sign::minus;
        out.push_back(t);
    }
    return out;
}

double ConcentrationReport::quantile(double q) const {
    long total = 0;
    for (long h : histogram) total += h;
    if (total == 0) return 0.0;
    auto rank = static_cast<long>(q * static_cast<double>(total - 1));
    long acc = 0;
    for (std::size_t v = 0; v < histogram.size(); ++v) {
        acc += histogram[v];
        if (acc > rank) return static_cast<double>(v);
    }
    return static_cast<double>(histogram.size() - 1);
}

ConcentrationReport run_concentration_experiment(const Digraph& d_base, const OrientedTree& tp,
                                                 const StarPack& pack, const GoodStarParams& p,
                                                 std::span<const Triple> triples, int trials,
                                                 std::uint64_t seed) {
    const int n = d_base.order();
    require(n == p.n, "parameter n does not match the base graph");
    require(tp.order() <= n, "tree larger than host");
    require(min_semidegree(d_base) >= static_cast<int>(ceil_count(p.alpha * n)),
            "base graph misses the semidegree bound");
    require(trials >= 1, "need at least one trial");
    require(!triples.empty(), "need at least one triple");

    const int set_size = static_cast<int>(floor_count(p.alpha * n / 3.0));
    require(set_size >= p.delta + 1,
            "designated sets of size floor(alpha*n/3) cannot host a star of degree delta");

    StarPack capped = truncate_pack(pack, p.n_cap, tp.order());
    const int star_count = capped.size();
    require(star_count >= 1, "empty star pack");

    // Degree profile and per-class star counts; classes are (s+, s-) pairs.
    std::vector<std::pair<int, int>> profile;
    profile.reserve(static_cast<std::size_t>(star_count));
    std::map<std::pair<int, int>, int> class_of;
    std::vector<int> star_class;
    for (const Star& s : capped.stars) {
        auto key = std::make_pair(static_cast<int>(s.out_leaves.size()),
                                  static_cast<int>(s.in_leaves.size()));
        profile.push_back(key);
        auto it = class_of.try_emplace(key, static_cast<int>(class_of.size())).first;
        star_class.push_back(it->second);
    }
    const int n_classes = static_cast<int>(class_of.size());
    std::vector<std::pair<int, int>> class_key(static_cast<std::size_t>(n_classes));
    for (const auto& [key, idx] : class_of) class_key[static_cast<std::size_t>(idx)] = key;

    // Closed-form expectation at the actual designated-set size.
    auto class_prob = [&](int cls, long long as, long long ap, long long am, long long b) {
        auto [sp, sm] = class_key[static_cast<std::size_t>(cls)];
        return cond_from_counts(GoodCounts{as, ap, am, b}, sp, sm);
    };
    double expected = 0.0;
    for (int cls : star_class) expected += class_prob(cls, set_size, set_size, set_size, n);

    // Exact Var[X]: each pairwise joint is the same injective-placement count
    // with both stars' vertices drawn at once.
    double expected_sq = expected;  // sum of E[X_S^2] = E[X_S]
    for (int i = 0; i < star_count; ++i)
        for (int j = i + 1; j < star_count; ++j) {
            const auto [spi, smi] = profile[static_cast<std::size_t>(i)];
            const auto [spj, smj] = profile[static_cast<std::size_t>(j)];
            const long long s_total = 2 + spi + spj + smi + smj;
            if (n < s_total) continue;
            const unsigned __int128 num =
                static_cast<unsigned __int128>(falling_factorial(set_size, 2)) *
                falling_factorial(set_size, spi + spj) * falling_factorial(set_size, smi + smj);
            const double p_ij =
                static_cast<double>(num) / static_cast<double>(falling_factorial(n, s_total));
            expected_sq += 2.0 * p_ij;
        }
    const double model_variance = std::max(0.0, expected_sq - expected * expected);

    std::vector<DesignatedSets> sets;
    sets.reserve(triples.size());
    for (const Triple& t : triples)
        sets.push_back(pick_designated_sets(d_base, t.u, t.sign, t.w, set_size));

    ConcentrationReport rep;
    rep.n = n;
    rep.trials = trials;
    rep.star_count = star_count;
    rep.expected = expected;
    rep.model_variance = model_variance;
    rep.histogram.assign(static_cast<std::size_t>(star_count) + 1, 0);
    rep.min_observed = star_count;
    rep.per_triple.resize(triples.size());
    for (std::size_t i = 0; i < triples.size(); ++i) rep.per_triple[i].triple = triples[i];

    std::vector<double> sum(triples.size(), 0.0), sumsq(triples.size(), 0.0);
    std::vector<long> below_half(triples.size(), 0);
    std::vector<long> tmin(triples.size(), star_count), tmax(triples.size(), 0);

    const double half = expected / 2.0;
    const int delta_plus_1 = p.delta + 1;
    std::vector<int> class_remaining(static_cast<std::size_t>(n_classes));

    for (int trial = 0; trial < trials; ++trial) {
        Embedding phi = sample_uniform_injection(tp.order(), n,
                                                 derive_seed(seed, "injection",
                                                             static_cast<std::uint64_t>(trial)));
        for (std::size_t ti = 0; ti < triples.size(); ++ti) {
            const DesignatedSets& ds = sets[ti];
            const long x = count_good(capped, phi, ds);
            sum[ti] += static_cast<double>(x);
            sumsq[ti] += static_cast<double>(x) * static_cast<double>(x);
            if (static_cast<double>(x) < half) ++below_half[ti];
            tmin[ti] = std::min(tmin[ti], x);
            tmax[ti] = std::max(tmax[ti], x);
            rep.min_observed = std::min(rep.min_observed, x);
            ++rep.histogram[static_cast<std::size_t>(x)];

            // Exposure replay: reveal the stars one by one and track the
            // conditional expectation of the good-star count.
            long long as = set_size, ap = set_size, am = set_size, b = n;
            for (int c = 0; c < n_classes; ++c) class_remaining[static_cast<std::size_t>(c)] = 0;
            for (int cls : star_class) ++class_remaining[static_cast<std::size_t>(cls)];
            double tail_prev = 0.0;
            for (int c = 0; c < n_classes; ++c)
                tail_prev += class_remaining[static_cast<std::size_t>(c)] *
                             class_prob(c, as, ap, am, b);
            double m_prev = tail_prev;  // M_0 = E[X]
            long goods = 0;
            std::vector<double> prob_prev(static_cast<std::size_t>(n_classes));
            for (int c = 0; c < n_classes; ++c)
                prob_prev[static_cast<std::size_t>(c)] = class_prob(c, as, ap, am, b);

            for (int k = 0; k < star_count; ++k) {
                const Star& s = capped.stars[static_cast<std::size_t>(k)];
                if (star_good(s, phi, ds)) ++goods;
                // Crude sandwich gap at the pre-exposure residuals.
                double crude = 0.0;
                --class_remaining[static_cast<std::size_t>(star_class[static_cast<std::size_t>(k)])];
                for (int c = 0; c < n_classes; ++c) {
                    const int cnt = class_remaining[static_cast<std::size_t>(c)];
                    if (cnt == 0) continue;
                    auto [sp, sm] = class_key[static_cast<std::size_t>(c)];
                    const double lower = cond_from_counts(
                        GoodCounts{as - delta_plus_1, ap - delta_plus_1, am - delta_plus_1, b}, sp,
                        sm);
                    const double upper =
                        cond_from_counts(GoodCounts{as, ap, am, b - delta_plus_1}, sp, sm);
                    crude += cnt * std::max(0.0, upper - lower);
                }
                rep.crude_diff_bound = std::max(rep.crude_diff_bound, 1.0 + crude);

                auto expose = [&](int v) {
                    const int img = phi.image(v);
                    if (ds.center_bits.test(static_cast<std::size_t>(img))) --as;
                    else if (ds.out_bits.test(static_cast<std::size_t>(img))) --ap;
                    else if (ds.in_bits.test(static_cast<std::size_t>(img))) --am;
                    --b;
                };
                expose(s.center);
                for (int l : s.out_leaves) expose(l);
                for (int l : s.in_leaves) expose(l);

                double tail = 0.0;
                double shift = 0.0;
                for (int c = 0; c < n_classes; ++c) {
                    const int cnt = class_remaining[static_cast<std::size_t>(c)];
                    const double pr = class_prob(c, as, ap, am, b);
                    if (cnt > 0) {
                        tail += cnt * pr;
                        shift += cnt * std::abs(pr - prob_prev[static_cast<std::size_t>(c)]);
                    }
                    prob_prev[static_cast<std::size_t>(c)] = pr;
                }
                const double m_k = static_cast<double>(goods) + tail;
                rep.measured_max_diff = std::max(rep.measured_max_diff, std::abs(m_k - m_prev));
                rep.c4_estimate = std::max(rep.c4_estimate, shift);
                m_prev = m_k;
            }
        }
    }

    for (std::size_t ti = 0; ti < triples.size(); ++ti) {
        TripleStats& ts = rep.per_triple[ti];
        ts.mean = sum[ti] / trials;
        const double var = std::max(0.0, sumsq[ti] / trials - ts.mean * ts.mean);
        ts.stddev = std::sqrt(var);
        ts.min_count = tmin[ti];
        ts.max_count = tmax[ti];
        ts.deviation_prob = static_cast<double>(below_half[ti]) / trials;
        rep.max_deviation_prob = std::max(rep.max_deviation_prob, ts.deviation_prob);
    }
    rep.azuma_bound = azuma_tail(star_count, 1.0 + rep.c4_estimate, expected / 2.0);
    rep.diff_exceeds_crude = rep.measured_max_diff > rep.crude_diff_bound;
    return rep;
}

}  // namespace rpd
