#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mpdm/errors.hpp"
#include "mpdm/pmf.hpp"

namespace mpdm {

// One-dimensional ASK constellation with m bits per symbol: the 2^m levels
// {-(2^m - 1), ..., -1, +1, ..., +(2^m - 1)} labeled with the binary reflected
// Gray code in ascending level order. The first label bit carries the sign and
// the remaining m-1 bits identify the amplitude (identical for +a and -a),
// which is the split probabilistic amplitude shaping relies on.
class AskConstellation {
public:
    explicit AskConstellation(int m) : m_(m) {
        if (m < 1 || m > 16) throw InvalidArgument("AskConstellation: m out of range");
        const int levels = 1 << m;
        levels_.resize(static_cast<std::size_t>(levels));
        labels_.resize(static_cast<std::size_t>(levels));
        for (int j = 0; j < levels; ++j) {
            levels_[static_cast<std::size_t>(j)] = static_cast<double>(2 * j - (levels - 1));
            labels_[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(j ^ (j >> 1));
        }
    }

    int bits() const noexcept { return m_; }                      // m
    int num_levels() const noexcept { return 1 << m_; }           // 2^m
    int num_amplitudes() const noexcept { return 1 << (m_ - 1); }  // 2^(m-1)

    // Unscaled level value of point j (ascending).
    double level(int j) const { return levels_[static_cast<std::size_t>(j)]; }

    // Amplitude index (0-based) of point j: |level| = 2*idx + 1.
    int amplitude_index(int j) const {
        return (static_cast<int>(std::abs(levels_[static_cast<std::size_t>(j)])) - 1) / 2;
    }

    // Bit i (0 = first/sign bit) of point j's label.
    int label_bit(int j, int i) const {
        return (labels_[static_cast<std::size_t>(j)] >> (m_ - 1 - i)) & 1;
    }

    // Amplitude values {1, 3, ..., 2^m - 1}.
    std::vector<double> amplitudes() const {
        std::vector<double> a(static_cast<std::size_t>(num_amplitudes()));
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<double>(2 * i + 1);
        return a;
    }

    // Scale factor making the average symbol energy 1 under p_amp (sign-symmetric).
    double unit_energy_scale(const Pmf& p_amp) const {
        if (static_cast<int>(p_amp.size()) != num_amplitudes())
            throw InvalidArgument("unit_energy_scale: PMF size does not match amplitude count");
        double energy = 0.0;
        for (std::size_t i = 0; i < p_amp.size(); ++i) {
            const double a = static_cast<double>(2 * i + 1);
            energy += p_amp[i] * a * a;
        }
        return 1.0 / std::sqrt(energy);
    }

private:
    int m_;
    std::vector<double> levels_;
    std::vector<std::uint32_t> labels_;
};

}  // namespace mpdm
