#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "mpdm/errors.hpp"

namespace mpdm {

// Gauss-Hermite rule: integral of e^{-t^2} f(t) dt ~= sum_j weight[j] f(node[j]).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// Orthonormal Hermite values p_0..p_{n} at x (weight e^{-x^2}). Returns p_n and
// p_{n-1}; accumulates sum of squares of p_0..p_{n-1} for Christoffel weights.
inline void hermite_eval(int n, double x, double& pn, double& pn1, double& sumsq) {
    double pk_1 = 0.0;
    double pk = 0.75112554446494248286;  // pi^{-1/4}
    sumsq = pk * pk;
    for (int k = 0; k < n; ++k) {
        const double next = x * std::sqrt(2.0 / (k + 1)) * pk - std::sqrt(static_cast<double>(k) / (k + 1)) * pk_1;
        pk_1 = pk;
        pk = next;
        if (k + 1 < n) sumsq += pk * pk;
    }
    pn = pk;
    pn1 = pk_1;
}

// Number of eigenvalues of the Hermite Jacobi matrix strictly below x
// (Sturm sequence on the tridiagonal with zero diagonal, b_k = sqrt(k/2)).
inline int sturm_count_below(int n, double x) {
    int count = 0;
    double d = -x;
    if (d < 0) ++count;
    for (int k = 1; k < n; ++k) {
        const double b2 = 0.5 * k;
        if (d == 0.0) d = 1e-300;
        d = -x - b2 / d;
        if (d < 0) ++count;
    }
    return count;
}

}  // namespace detail

// Computes the n-point rule. Roots are isolated by Sturm bisection (exact
// counts, no missed roots), polished with Newton, weights by the Christoffel
// formula 1/sum p_k^2. Deterministic.
inline QuadratureRule gauss_hermite(int n) {
    if (n < 1) throw InvalidArgument("gauss_hermite: need at least one node");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const double radius = std::sqrt(2.0 * n) + 1.0;
    for (int i = n / 2; i < n; ++i) {  // nonnegative half; mirror the rest
        double lo = 0.0, hi = radius;
        // bisect until exactly i eigenvalues lie below the midpoint
        for (int it = 0; it < 200 && hi - lo > 1e-14 * radius; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (detail::sturm_count_below(n, mid) <= i)
                lo = mid;
            else
                hi = mid;
        }
        double x = 0.5 * (lo + hi);
        double pn, pn1, sumsq;
        for (int it = 0; it < 8; ++it) {  // Newton: p_n'(x) = sqrt(2n) p_{n-1}(x)
            detail::hermite_eval(n, x, pn, pn1, sumsq);
            const double deriv = std::sqrt(2.0 * n) * pn1;
            if (deriv == 0.0) break;
            const double dx = pn / deriv;
            x -= dx;
            if (std::abs(dx) < 1e-16 * (1.0 + std::abs(x))) break;
        }
        if (n % 2 == 1 && i == n / 2) x = 0.0;
        detail::hermite_eval(n, x, pn, pn1, sumsq);
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 1.0 / sumsq;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = -x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = 1.0 / sumsq;
    }
    return rule;
}

// Process-wide cache; rules are small and reused heavily by the rate sweeps.
inline const QuadratureRule& gauss_hermite_cached(int n) {
    static std::mutex mu;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_hermite(n)).first;
    return it->second;
}

}  // namespace mpdm
