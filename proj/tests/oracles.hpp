#pragma once

// Brute-force reference implementations used only by tests. Everything here
// is deliberately independent of the library's algorithms: plain enumeration,
// plain accumulation, plain sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mpdm/bits.hpp"
#include "mpdm/composition.hpp"
#include "mpdm/pmf.hpp"

namespace oracle {

// Every composition of n into a parts, in lexicographic order.
inline std::vector<std::vector<int>> all_compositions(int n, int a) {
    std::vector<std::vector<int>> out;
    std::vector<int> c(static_cast<std::size_t>(a), 0);
    auto rec = [&](auto&& self, int i, int rem) -> void {
        if (i == a - 1) {
            c[static_cast<std::size_t>(i)] = rem;
            out.push_back(c);
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            c[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, rem - v);
        }
    };
    rec(rec, 0, n);
    return out;
}

inline double kl_bits(const std::vector<int>& counts, const mpdm::Pmf& p, int n) {
    double d = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) continue;
        if (p[i] <= 0.0) return std::numeric_limits<double>::infinity();
        const double q = static_cast<double>(counts[i]) / n;
        d += q * std::log2(q / p[i]);
    }
    return d;
}

// Exhaustive divergence minimizer; ties within 1e-9 resolve lexicographically.
inline std::vector<int> quantize_brute_force(const mpdm::Pmf& p, int n) {
    const auto comps = all_compositions(n, static_cast<int>(p.size()));
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : comps) best = std::min(best, kl_bits(c, p, n));
    for (const auto& c : comps)  // lexicographic order of enumeration
        if (kl_bits(c, p, n) <= best + 1e-9) return c;
    return {};
}

// All distinct sequences with the given composition, lexicographic: exactly
// what std::next_permutation yields from the sorted sequence.
inline std::vector<mpdm::Sequence> all_arrangements(const std::vector<int>& counts) {
    mpdm::Sequence seq;
    for (std::size_t i = 0; i < counts.size(); ++i)
        seq.insert(seq.end(), static_cast<std::size_t>(counts[i]), static_cast<std::uint8_t>(i + 1));
    std::vector<mpdm::Sequence> out;
    do {
        out.push_back(seq);
    } while (std::next_permutation(seq.begin(), seq.end()));
    return out;
}

inline mpdm::Pmf random_pmf(std::mt19937_64& rng, int a, double min_entry = 1e-3) {
    std::uniform_real_distribution<double> uni(min_entry, 1.0);
    std::vector<double> p(static_cast<std::size_t>(a));
    double sum = 0.0;
    for (double& x : p) {
        x = uni(rng);
        sum += x;
    }
    for (double& x : p) x /= sum;
    // counter the normalization rounding so the Pmf invariant holds exactly enough
    double s2 = 0.0;
    for (double x : p) s2 += x;
    p[0] += 1.0 - s2;
    return mpdm::Pmf(p);
}

inline std::vector<int> random_composition(std::mt19937_64& rng, int n, int a) {
    std::vector<int> c(static_cast<std::size_t>(a), 0);
    std::uniform_int_distribution<int> pick(0, a - 1);
    for (int i = 0; i < n; ++i) ++c[static_cast<std::size_t>(pick(rng))];
    return c;
}

inline mpdm::Bits random_word(std::mt19937_64& rng, int k) {
    mpdm::Bits w(static_cast<std::size_t>(k));
    for (auto& b : w) b = static_cast<std::uint8_t>(rng() & 1);
    return w;
}

// Monte-Carlo estimate of the 2D BMD rate with Gray-labeled ASK, returning the
// estimate and its standard error. Mirrors the channel definition: unit-energy
// 1D symbols, per-dimension noise variance 1/SNR.
struct McEstimate {
    double value;
    double stderr_value;
};

inline McEstimate mc_r_bmd_2d(const std::vector<double>& p_amp, double snr_db, int m,
                              std::size_t samples, std::uint64_t seed) {
    const int points = 1 << m;
    std::vector<double> x(static_cast<std::size_t>(points));
    std::vector<double> prob(static_cast<std::size_t>(points));
    std::vector<int> gray(static_cast<std::size_t>(points));
    double energy = 0.0;
    for (std::size_t i = 0; i < p_amp.size(); ++i) {
        const double a = static_cast<double>(2 * i + 1);
        energy += p_amp[i] * a * a;
    }
    const double scale = 1.0 / std::sqrt(energy);
    double h_input = 0.0;
    for (int j = 0; j < points; ++j) {
        x[static_cast<std::size_t>(j)] = scale * static_cast<double>(2 * j - (points - 1));
        const int amp = (std::abs(2 * j - (points - 1)) - 1) / 2;
        prob[static_cast<std::size_t>(j)] = p_amp[static_cast<std::size_t>(amp)] / 2.0;
        gray[static_cast<std::size_t>(j)] = j ^ (j >> 1);
        if (prob[static_cast<std::size_t>(j)] > 0)
            h_input -= prob[static_cast<std::size_t>(j)] * std::log2(prob[static_cast<std::size_t>(j)]);
    }
    const double sigma2 = std::pow(10.0, -snr_db / 10.0);
    const double sigma = std::sqrt(sigma2);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    std::discrete_distribution<int> source(prob.begin(), prob.end());
    double acc = 0.0, acc2 = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const int j = source(rng);
        const double y = x[static_cast<std::size_t>(j)] + noise(rng);
        double sample_info = 0.0;
        for (int i = 0; i < m; ++i) {
            double num = 0.0, den = 0.0;
            const int jb = (gray[static_cast<std::size_t>(j)] >> (m - 1 - i)) & 1;
            for (int t = 0; t < points; ++t) {
                const double d = y - x[static_cast<std::size_t>(t)];
                const double lik = prob[static_cast<std::size_t>(t)] * std::exp(-d * d / (2 * sigma2));
                den += lik;
                if (((gray[static_cast<std::size_t>(t)] >> (m - 1 - i)) & 1) == jb) num += lik;
            }
            sample_info += -std::log2(num / den);
        }
        acc += sample_info;
        acc2 += sample_info * sample_info;
    }
    const double mean = acc / static_cast<double>(samples);
    const double var = acc2 / static_cast<double>(samples) - mean * mean;
    const double r1d = h_input - mean;
    McEstimate e;
    e.value = 2.0 * r1d;
    e.stderr_value = 2.0 * std::sqrt(std::max(0.0, var) / static_cast<double>(samples));
    return e;
}

}  // namespace oracle
