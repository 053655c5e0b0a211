#pragma once

#include <cmath>

namespace rpd {

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

// Wilson score interval for a binomial proportion (default 95%).
inline WilsonInterval wilson_interval(int successes, int trials, double z = 1.959963985) {
    if (trials <= 0) return {0.0, 1.0};
    const double n = trials;
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half};
}

// Normal-approximation acceptance threshold for a chi-square statistic:
// mean df, variance 2*df.
inline double chi_square_threshold(int df, double k_sigma) {
    return df + k_sigma * std::sqrt(2.0 * df);
}

struct RunningStat {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double stddev() const { return std::sqrt(variance()); }
};

}  // namespace rpd
