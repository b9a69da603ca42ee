#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mpdm/constellation.hpp"
#include "mpdm/errors.hpp"
#include "mpdm/pmf.hpp"
#include "mpdm/quadrature.hpp"

namespace mpdm {

// P(a) proportional to exp(-nu * a^2) over the given amplitudes.
inline Pmf maxwell_boltzmann(double nu, const std::vector<double>& amplitudes) {
    if (!(nu >= 0.0)) throw InvalidArgument("maxwell_boltzmann: nu must be >= 0");
    if (amplitudes.empty()) throw InvalidArgument("maxwell_boltzmann: empty amplitude set");
    std::vector<double> w(amplitudes.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::exp(-nu * amplitudes[i] * amplitudes[i]);
        sum += w[i];
    }
    for (double& x : w) x /= sum;
    return Pmf(std::move(w));
}

inline double awgn_capacity_2d(double snr_db) {
    return std::log2(1.0 + std::pow(10.0, snr_db / 10.0));
}

// Bit-metric decoding rate H(B) - sum_i H(B_i | Y) for one ASK dimension,
// doubled (a QAM symbol is two independent ASK dimensions). Sign bit uniform,
// P(+-a) = p_amp(a)/2, unit average symbol energy per dimension; SNR is symbol
// energy over noise variance per 2D symbol, so each dimension sees noise
// variance 1/SNR. Conditional entropies are integrated with Gauss-Hermite
// nodes centered on every signal point. Clamped at zero.
inline double r_bmd_2d(const Pmf& p_amp, double snr_db, int m, int quad_nodes = 128) {
    if (m < 1) throw InvalidArgument("r_bmd_2d: m must be >= 1");
    AskConstellation con(m);
    if (static_cast<int>(p_amp.size()) != con.num_amplitudes())
        throw InvalidArgument("r_bmd_2d: PMF size does not match 2^(m-1) amplitudes");

    const int points = con.num_levels();
    const double scale = con.unit_energy_scale(p_amp);
    const double sigma2 = std::pow(10.0, -snr_db / 10.0);  // per dimension
    const double sigma = std::sqrt(sigma2);
    const QuadratureRule& q = gauss_hermite_cached(quad_nodes);

    std::vector<double> x(static_cast<std::size_t>(points));
    std::vector<double> prob(static_cast<std::size_t>(points));
    double h_input = 0.0;
    for (int j = 0; j < points; ++j) {
        x[static_cast<std::size_t>(j)] = con.level(j) * scale;
        const double pj = p_amp[static_cast<std::size_t>(con.amplitude_index(j))] / 2.0;
        prob[static_cast<std::size_t>(j)] = pj;
        if (pj > 0.0) h_input -= pj * std::log2(pj);
    }

    const double inv_sqrt_pi = 0.56418958354775628695;
    std::vector<double> like(static_cast<std::size_t>(points));
    std::vector<double> bit_mass(static_cast<std::size_t>(m));
    double h_cond = 0.0;  // sum over bits of H(B_i | Y)
    for (int j = 0; j < points; ++j) {
        const double pj = prob[static_cast<std::size_t>(j)];
        if (pj == 0.0) continue;
        for (int t = 0; t < quad_nodes; ++t) {
            const double y = x[static_cast<std::size_t>(j)] + std::sqrt(2.0) * sigma * q.nodes[static_cast<std::size_t>(t)];
            double emax = -std::numeric_limits<double>::infinity();
            for (int s = 0; s < points; ++s) {
                const double d = y - x[static_cast<std::size_t>(s)];
                const double e = -d * d / (2.0 * sigma2);
                like[static_cast<std::size_t>(s)] = e;
                if (prob[static_cast<std::size_t>(s)] > 0.0 && e > emax) emax = e;
            }
            double total = 0.0;
            std::fill(bit_mass.begin(), bit_mass.end(), 0.0);
            for (int s = 0; s < points; ++s) {
                const double ps = prob[static_cast<std::size_t>(s)];
                if (ps == 0.0) continue;
                const double v = ps * std::exp(like[static_cast<std::size_t>(s)] - emax);
                total += v;
                for (int i = 0; i < m; ++i)
                    if (con.label_bit(s, i) == con.label_bit(j, i)) bit_mass[static_cast<std::size_t>(i)] += v;
            }
            const double wnode = pj * q.weights[static_cast<std::size_t>(t)] * inv_sqrt_pi;
            for (int i = 0; i < m; ++i)
                h_cond -= wnode * std::log2(bit_mass[static_cast<std::size_t>(i)] / total);
        }
    }
    const double r = 2.0 * (h_input - h_cond);
    if (!std::isfinite(r)) throw ComputeError("r_bmd_2d: non-finite integrand (mis-scaled inputs?)");
    return std::max(0.0, r);
}

struct MbOptimum {
    double nu;
    Pmf pmf;
};

// The Maxwell-Boltzmann parameter maximizing the BMD rate at the given SNR,
// by golden-section search (absolute tolerance 1e-4 in nu) inside a bracket
// from a coarse grid. The grid must look unimodal or the search refuses.
inline MbOptimum optimize_mb(double snr_db, int m, double nu_max = 0.5, int quad_nodes = 128) {
    if (m < 2) throw InvalidArgument("optimize_mb: m must be >= 2");
    const std::vector<double> amps = AskConstellation(m).amplitudes();
    auto rate_at = [&](double nu) { return r_bmd_2d(maxwell_boltzmann(nu, amps), snr_db, m, quad_nodes); };

    constexpr int grid_points = 41;
    std::vector<double> value(grid_points);
    int best = 0;
    for (int i = 0; i < grid_points; ++i) {
        value[static_cast<std::size_t>(i)] = rate_at(nu_max * i / (grid_points - 1));
        if (value[static_cast<std::size_t>(i)] > value[static_cast<std::size_t>(best)]) best = i;
    }
    constexpr double rise_tol = 1e-9;  // quadrature noise allowance
    for (int i = 1; i <= best; ++i)
        if (value[static_cast<std::size_t>(i)] < value[static_cast<std::size_t>(i) - 1] - rise_tol)
            throw ComputeError("optimize_mb: coarse grid not unimodal (rise)");
    for (int i = best + 1; i < grid_points; ++i)
        if (value[static_cast<std::size_t>(i)] > value[static_cast<std::size_t>(i) - 1] + rise_tol)
            throw ComputeError("optimize_mb: coarse grid not unimodal (fall)");

    double a = nu_max * std::max(0, best - 1) / (grid_points - 1);
    double b = nu_max * std::min(grid_points - 1, best + 1) / (grid_points - 1);
    const double golden = 0.61803398874989484820;
    double c = b - golden * (b - a);
    double d = a + golden * (b - a);
    double fc = rate_at(c);
    double fd = rate_at(d);
    while (b - a > 1e-4) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - golden * (b - a);
            fc = rate_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + golden * (b - a);
            fd = rate_at(d);
        }
    }
    const double nu = 0.5 * (a + b);
    return {nu, maxwell_boltzmann(nu, amps)};
}

// Operational rate of a finite-length matcher: the BMD rate less twice the
// per-amplitude rate loss (two shaped amplitudes per 2D symbol).
inline double air_dm(double r_bmd_2d_value, double rate_loss_per_amplitude) {
    if (rate_loss_per_amplitude < 0) throw InvalidArgument("air_dm: rate loss must be >= 0");
    return r_bmd_2d_value - 2.0 * rate_loss_per_amplitude;
}

// Information content per ASK symbol of the shaping/FEC split:
// [ (m-1)/m * r_sh + (r_fec - (m-1)/m) ] * m.
inline double i_pas(double r_sh, double r_fec, int m) {
    const double floor_rate = static_cast<double>(m - 1) / m;
    if (r_fec < floor_rate - 1e-12) throw InvalidArgument("i_pas: FEC rate below (m-1)/m");
    return (floor_rate * r_sh + (r_fec - floor_rate)) * m;
}

// Efficiency of a finite-length matcher relative to the infinite-length one:
// (k/n + 1 + m(r_fec - 1)) / (H + 1 + m(r_fec - 1)).
inline double shaping_efficiency(double k, double n, double h_tilde, int m, double r_fec) {
    const double floor_rate = static_cast<double>(m - 1) / m;
    if (r_fec < floor_rate - 1e-12) throw InvalidArgument("shaping_efficiency: FEC rate below (m-1)/m");
    const double denom = h_tilde + 1.0 + m * (r_fec - 1.0);
    if (std::abs(denom) < 1e-300) throw InvalidArgument("shaping_efficiency: degenerate parameters");
    return (k / n + 1.0 + m * (r_fec - 1.0)) / denom;
}

// FEC rate at which the PAS split carries exactly the 1D BMD rate:
// r_bmd/m + (1 - H/(m-1)) * (m-1)/m.
inline double fec_rate_threshold(double r_bmd_1d, double h_tilde, int m) {
    if (m < 2) throw InvalidArgument("fec_rate_threshold: m must be >= 2");
    const double r = r_bmd_1d / m + (1.0 - h_tilde / (m - 1)) * (static_cast<double>(m - 1) / m);
    if (!(r > 0.0 && r <= 1.0 + 1e-12)) throw ComputeError("fec_rate_threshold: result outside (0, 1]");
    return std::min(r, 1.0);
}

// Per-SNR record of the rates a finite-length matcher achieves.
struct AirReport {
    double snr_db;
    double r_bmd;      // bit per 2D symbol, zero rate loss
    double r_loss_2d;  // 2 * per-amplitude rate loss
    double air_dm;     // r_bmd - r_loss_2d
    double capacity;   // log2(1 + SNR)
    double gap_db;     // extra SNR over the capacity-matching SNR for air_dm
};

inline AirReport make_air_report(double snr_db, double r_bmd_value, double rate_loss_per_amplitude) {
    AirReport rep;
    rep.snr_db = snr_db;
    rep.r_bmd = r_bmd_value;
    rep.r_loss_2d = 2.0 * rate_loss_per_amplitude;
    rep.air_dm = air_dm(r_bmd_value, rate_loss_per_amplitude);
    rep.capacity = awgn_capacity_2d(snr_db);
    rep.gap_db = rep.air_dm > 0.0
                     ? snr_db - 10.0 * std::log10(std::pow(2.0, rep.air_dm) - 1.0)
                     : std::numeric_limits<double>::infinity();
    return rep;
}

}  // namespace mpdm
