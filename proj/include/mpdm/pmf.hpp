#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "mpdm/errors.hpp"

namespace mpdm {

// Probability mass function over an ordered amplitude alphabet. Entry i is the
// probability of the i-th amplitude. Entries must be nonnegative and sum to 1
// within 1e-12.
class Pmf {
public:
    explicit Pmf(std::vector<double> probs) : p_(std::move(probs)) {
        if (p_.empty()) throw InvalidArgument("Pmf: empty probability vector");
        double sum = 0.0;
        for (double x : p_) {
            if (!(x >= 0.0)) throw InvalidArgument("Pmf: negative or NaN entry");
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-12) throw InvalidArgument("Pmf: entries do not sum to 1");
    }

    std::size_t size() const noexcept { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    const std::vector<double>& probs() const noexcept { return p_; }

    auto begin() const noexcept { return p_.begin(); }
    auto end() const noexcept { return p_.end(); }

    bool operator==(const Pmf&) const = default;

private:
    std::vector<double> p_;
};

// Entropy in bits, with 0*log2(0) := 0.
inline double entropy(const Pmf& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log2(x);
    return h;
}

}  // namespace mpdm
