#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mpdm/air.hpp"
#include "mpdm/codebook.hpp"
#include "mpdm/composition.hpp"
#include "mpdm/errors.hpp"
#include "mpdm/pmf.hpp"

namespace mpdm {

enum class DmKind { ccdm, mpdm };

inline Pmf quantized_pmf(const Composition& c) {
    std::vector<double> p(static_cast<std::size_t>(c.alphabet_size()));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<double>(c[i]) / c.total();
    return Pmf(std::move(p));
}

// Input bits of the matcher for the type quantized from `target` at length n.
inline int dm_input_bits(const Composition& c_typ, DmKind kind) {
    return kind == DmKind::ccdm ? static_cast<int>(floor_log2(multinomial(c_typ)))
                                : mpdm_input_bits(c_typ);
}

struct RateLossRow {
    int n;
    int k;
    double rate;       // k/n
    double rate_loss;  // H(quantized) - k/n
};

inline std::vector<RateLossRow> sweep_rate_loss(const Pmf& target, int n_min, int n_max, DmKind kind) {
    if (n_min < 1 || n_max < n_min) throw InvalidArgument("sweep_rate_loss: bad n range");
    if (n_max > 1000) throw InvalidArgument("sweep_rate_loss: n range capped at 1000");
    std::vector<RateLossRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    for (int n = n_min; n <= n_max; ++n) {
        const Composition c = quantize_pmf(target, n);
        const int k = dm_input_bits(c, kind);
        rows.push_back({n, k, static_cast<double>(k) / n, rate_loss(k, n, quantized_pmf(c))});
    }
    return rows;
}

// One matcher length in an AIR sweep; no value means the infinite-length
// (zero rate loss) reference.
using DmLength = std::optional<int>;

struct AirSweepSpec {
    double snr_min = 5.0;
    double snr_max = 20.0;
    double snr_step = 0.5;
    int m = 3;
    DmKind kind = DmKind::mpdm;
    std::vector<DmLength> lengths;
    int quad_nodes = 128;
};

struct AirSweepRow {
    double snr_db;
    double capacity;
    double r_bmd_uniform;  // uniform amplitudes, zero rate loss
    double r_bmd_shaped;   // optimal Maxwell-Boltzmann, zero rate loss
    std::vector<AirReport> per_length;
};

// Per SNR: pick the optimal Maxwell-Boltzmann PMF, quantize it per length,
// and evaluate the rate-loss-adjusted rate of each matcher.
inline AirSweepRow air_sweep_row(double snr_db, int m, DmKind kind,
                                 const std::vector<DmLength>& lengths, int quad_nodes = 128) {
    AirSweepRow row;
    row.snr_db = snr_db;
    row.capacity = awgn_capacity_2d(snr_db);
    const int amplitudes = 1 << (m - 1);
    row.r_bmd_uniform =
        r_bmd_2d(Pmf(std::vector<double>(static_cast<std::size_t>(amplitudes), 1.0 / amplitudes)),
                 snr_db, m, quad_nodes);
    const MbOptimum mb = optimize_mb(snr_db, m, 0.5, quad_nodes);
    row.r_bmd_shaped = r_bmd_2d(mb.pmf, snr_db, m, quad_nodes);
    for (const DmLength& len : lengths) {
        if (!len) {
            row.per_length.push_back(make_air_report(snr_db, row.r_bmd_shaped, 0.0));
            continue;
        }
        const Composition c = quantize_pmf(mb.pmf, *len);
        const Pmf pq = quantized_pmf(c);
        const int k = dm_input_bits(c, kind);
        row.per_length.push_back(
            make_air_report(snr_db, r_bmd_2d(pq, snr_db, m, quad_nodes), rate_loss(k, *len, pq)));
    }
    return row;
}

inline std::vector<AirSweepRow> sweep_air(const AirSweepSpec& spec) {
    if (spec.lengths.empty()) throw InvalidArgument("sweep_air: need at least one length");
    if (spec.m < 2 || spec.m > 4) throw InvalidArgument("sweep_air: m must be 2, 3, or 4");
    if (!(spec.snr_step > 0) || spec.snr_max < spec.snr_min)
        throw InvalidArgument("sweep_air: bad SNR range");
    std::vector<AirSweepRow> rows;
    for (double snr = spec.snr_min; snr <= spec.snr_max + 1e-9; snr += spec.snr_step)
        rows.push_back(air_sweep_row(snr, spec.m, spec.kind, spec.lengths, spec.quad_nodes));
    return rows;
}

}  // namespace mpdm
