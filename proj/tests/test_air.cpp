#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mpdm/air.hpp"
#include "mpdm/quadrature.hpp"
#include "oracles.hpp"

using namespace mpdm;

namespace {
const std::vector<double> kAmps8 = {1.0, 3.0, 5.0, 7.0};
}

TEST_CASE("gauss-hermite rule integrates gaussian moments exactly") {
    const double sqrt_pi = std::sqrt(std::acos(-1.0));
    for (int n : {16, 64, 128, 256}) {
        const QuadratureRule& q = gauss_hermite(n);
        double w = 0.0, wx = 0.0, wx2 = 0.0;
        for (int i = 0; i < n; ++i) {
            w += q.weights[static_cast<std::size_t>(i)];
            wx += q.weights[static_cast<std::size_t>(i)] * q.nodes[static_cast<std::size_t>(i)];
            wx2 += q.weights[static_cast<std::size_t>(i)] * q.nodes[static_cast<std::size_t>(i)] *
                   q.nodes[static_cast<std::size_t>(i)];
        }
        CHECK_THAT(w, Catch::Matchers::WithinAbs(sqrt_pi, 1e-12));
        CHECK_THAT(wx, Catch::Matchers::WithinAbs(0.0, 1e-12));
        CHECK_THAT(wx2, Catch::Matchers::WithinAbs(sqrt_pi / 2, 1e-11));
        for (int i = 0; i < n; ++i)
            CHECK(q.nodes[static_cast<std::size_t>(i)] ==
                  -q.nodes[static_cast<std::size_t>(n - 1 - i)]);
    }
}

TEST_CASE("ask constellation labeling and scaling") {
    const AskConstellation con(3);
    CHECK(con.num_levels() == 8);
    CHECK(con.num_amplitudes() == 4);
    CHECK(con.amplitudes() == std::vector<double>{1, 3, 5, 7});
    // sign lives in the first bit; the amplitude bits coincide for +a and -a
    for (int j = 0; j < 8; ++j) {
        CHECK(con.label_bit(j, 0) == (con.level(j) > 0 ? 1 : 0));
        const int mirror = 7 - j;
        CHECK(std::abs(con.level(j)) == std::abs(con.level(mirror)));
        for (int i = 1; i < 3; ++i) CHECK(con.label_bit(j, i) == con.label_bit(mirror, i));
    }
    // adjacent levels differ in exactly one label bit (Gray property)
    for (int j = 0; j + 1 < 8; ++j) {
        int diff = 0;
        for (int i = 0; i < 3; ++i) diff += con.label_bit(j, i) != con.label_bit(j + 1, i);
        CHECK(diff == 1);
    }
    // unit-energy scaling under the uniform amplitude distribution
    const double scale = con.unit_energy_scale(Pmf({0.25, 0.25, 0.25, 0.25}));
    CHECK_THAT(scale, Catch::Matchers::WithinAbs(1.0 / std::sqrt(21.0), 1e-15));
    double energy = 0.0;
    for (int j = 0; j < 8; ++j) energy += (1.0 / 8) * con.level(j) * scale * con.level(j) * scale;
    CHECK_THAT(energy, Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("zero shaping reduces to uniform signaling") {
    const Pmf mb0 = maxwell_boltzmann(0.0, kAmps8);
    const Pmf uniform({0.25, 0.25, 0.25, 0.25});
    for (double snr : {6.0, 14.0})
        CHECK_THAT(r_bmd_2d(mb0, snr, 3), Catch::Matchers::WithinAbs(r_bmd_2d(uniform, snr, 3), 1e-12));
}

TEST_CASE("maxwell_boltzmann") {
    const Pmf uniform = maxwell_boltzmann(0.0, kAmps8);
    for (double x : uniform) CHECK_THAT(x, Catch::Matchers::WithinAbs(0.25, 1e-15));

    CHECK(maxwell_boltzmann(10.0, kAmps8)[0] > 1.0 - 1e-10);

    const Pmf p = maxwell_boltzmann(0.05, kAmps8);
    long double w[4], sum = 0.0L;
    for (int i = 0; i < 4; ++i) {
        const long double a = 2.0L * i + 1.0L;
        w[i] = std::exp(-0.05L * a * a);
        sum += w[i];
    }
    for (int i = 0; i < 4; ++i)
        CHECK_THAT(p[static_cast<std::size_t>(i)],
                   Catch::Matchers::WithinAbs(static_cast<double>(w[i] / sum), 1e-14));
}

TEST_CASE("maxwell_boltzmann entropy decreases with nu") {
    double prev = entropy(maxwell_boltzmann(0.0, kAmps8));
    for (double nu = 0.02; nu <= 0.5; nu += 0.02) {
        const double h = entropy(maxwell_boltzmann(nu, kAmps8));
        CHECK(h < prev);
        prev = h;
    }
}

TEST_CASE("awgn capacity") {
    CHECK_THAT(awgn_capacity_2d(0.0), Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(awgn_capacity_2d(14.0), Catch::Matchers::WithinAbs(4.7070, 1e-4));
    CHECK(awgn_capacity_2d(-200.0) < 1e-9);
}

TEST_CASE("r_bmd_2d limits") {
    const Pmf uniform({0.25, 0.25, 0.25, 0.25});
    CHECK(r_bmd_2d(uniform, -30.0, 3) < 0.05);
    CHECK(r_bmd_2d(uniform, -30.0, 3) >= 0.0);

    const Pmf shaped = maxwell_boltzmann(0.05, kAmps8);
    const double noiseless = r_bmd_2d(shaped, 40.0, 3);
    CHECK_THAT(noiseless, Catch::Matchers::WithinAbs(2.0 * (entropy(shaped) + 1.0), 1e-3));
}

TEST_CASE("r_bmd_2d stays within its information bounds") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 5; ++trial) {
        const Pmf p = oracle::random_pmf(rng, 4);
        for (double snr : {-10.0, 3.0, 14.0, 25.0}) {
            const double r = r_bmd_2d(p, snr, 3);
            CHECK(r >= 0.0);
            CHECK(r <= 2.0 * 3);
            CHECK(r <= 2.0 * (entropy(p) + 1.0) + 1e-9);
        }
    }
}

TEST_CASE("r_bmd_2d is non-decreasing in SNR") {
    const Pmf p = maxwell_boltzmann(0.04, kAmps8);
    double prev = -1.0;
    for (double snr = -5.0; snr <= 30.0 + 1e-9; snr += 0.5) {
        const double r = r_bmd_2d(p, snr, 3);
        CHECK(r >= prev - 1e-6);
        prev = r;
    }
}

TEST_CASE("r_bmd_2d matches a monte-carlo estimate for uniform 8-ASK at 14 dB") {
    const double quad = r_bmd_2d(Pmf({0.25, 0.25, 0.25, 0.25}), 14.0, 3);
    const auto mc = oracle::mc_r_bmd_2d({0.25, 0.25, 0.25, 0.25}, 14.0, 3, 10'000'000, 12345);
    CHECK_THAT(quad, Catch::Matchers::WithinAbs(mc.value, 3.0 * mc.stderr_value));
}

TEST_CASE("doubling the quadrature nodes leaves the rate unchanged to 1e-6") {
    for (double snr : {8.0, 11.76, 14.0, 18.0}) {
        const Pmf shaped = maxwell_boltzmann(0.03, kAmps8);
        CHECK_THAT(r_bmd_2d(shaped, snr, 3, 128),
                   Catch::Matchers::WithinAbs(r_bmd_2d(shaped, snr, 3, 256), 1e-6));
        CHECK_THAT(r_bmd_2d(Pmf({0.25, 0.25, 0.25, 0.25}), snr, 3, 128),
                   Catch::Matchers::WithinAbs(r_bmd_2d(Pmf({0.25, 0.25, 0.25, 0.25}), snr, 3, 256), 1e-6));
    }
}

TEST_CASE("optimize_mb finds the grid-scan optimum") {
    // near-capacity regime wants a near-uniform distribution
    CHECK(optimize_mb(30.0, 3).nu < 0.01);

    // brute-force scan with step 1e-3
    double best_nu = 0.0, best_rate = -1.0;
    for (double nu = 0.0; nu <= 0.2 + 1e-12; nu += 1e-3) {
        const double r = r_bmd_2d(maxwell_boltzmann(nu, kAmps8), 14.0, 3);
        if (r > best_rate) {
            best_rate = r;
            best_nu = nu;
        }
    }
    CHECK_THAT(optimize_mb(14.0, 3).nu, Catch::Matchers::WithinAbs(best_nu, 2e-3));

    // low SNR wants visible shaping
    CHECK(entropy(optimize_mb(8.0, 3).pmf) < 2.0);
}

TEST_CASE("air_dm") {
    CHECK(air_dm(4.2, 0.0) == 4.2);
    CHECK_THAT(air_dm(4.2, 0.55), Catch::Matchers::WithinAbs(4.2 - 1.10, 1e-12));
    CHECK_THAT(air_dm(4.5, 0.025), Catch::Matchers::WithinAbs(4.45, 1e-12));
    CHECK(air_dm(4.0, 0.1) < 4.0);
    CHECK_THROWS_AS(air_dm(4.0, -0.1), InvalidArgument);
}

TEST_CASE("i_pas") {
    CHECK_THAT(i_pas(1.0, 1.0, 3), Catch::Matchers::WithinAbs(3.0, 1e-12));
    CHECK_THAT(i_pas(0.7, 2.0 / 3.0, 3), Catch::Matchers::WithinAbs(2.0 * 0.7, 1e-12));
    CHECK_THAT(i_pas(1.85 / 2.0, 5.0 / 6.0, 3), Catch::Matchers::WithinAbs(2.35, 1e-9));
    CHECK_THROWS_AS(i_pas(1.0, 0.5, 3), InvalidArgument);
}

TEST_CASE("fec_rate_threshold") {
    CHECK_THAT(fec_rate_threshold(2.0, 2.0, 3), Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-12));
    CHECK_THAT(fec_rate_threshold(1.85 + 1.0, 1.85, 3), Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(fec_rate_threshold(2.35, 1.85, 3), Catch::Matchers::WithinAbs(0.8333, 1e-4));
}

TEST_CASE("shaping_efficiency") {
    CHECK_THAT(shaping_efficiency(18.5, 10.0, 1.85, 3, 0.9), Catch::Matchers::WithinAbs(1.0, 1e-12));

    // efficiency grows with the carried bits
    const double eta0 = shaping_efficiency(0.0, 10.0, 1.85, 3, 0.9);
    const double eta13 = shaping_efficiency(13.0, 10.0, 1.85, 3, 0.9);
    const double eta17 = shaping_efficiency(17.0, 10.0, 1.85, 3, 0.9);
    CHECK(eta0 < eta13);
    CHECK(eta13 < eta17);
}

TEST_CASE("efficiency algebra is self-consistent") {
    // eta computed through the threshold FEC rate equals 1 + (k/n - H)/r_bmd,
    // and the multiplicative form reproduces the subtractive rate adjustment.
    const double h = 1.846439;
    const double k = 13, n = 10;
    const int m = 3;
    for (double r_bmd_1d : {2.0, 2.35, 2.6}) {
        const double r_fec = fec_rate_threshold(r_bmd_1d, h, m);
        const double eta = shaping_efficiency(k, n, h, m, r_fec);
        CHECK_THAT(eta, Catch::Matchers::WithinAbs(1.0 + (k / n - h) / r_bmd_1d, 1e-9));
        const double air_mult_2d = eta * 2.0 * r_bmd_1d;
        const double air_sub_2d = 2.0 * r_bmd_1d - 2.0 * (h - k / n);
        CHECK_THAT(air_mult_2d, Catch::Matchers::WithinAbs(air_sub_2d, 1e-9));
    }
}

TEST_CASE("air report") {
    const AirReport rep = make_air_report(14.0, 4.6, 0.05);
    CHECK(rep.r_loss_2d == 0.10);
    CHECK_THAT(rep.air_dm, Catch::Matchers::WithinAbs(4.5, 1e-12));
    CHECK_THAT(rep.capacity, Catch::Matchers::WithinAbs(4.7070, 1e-4));
    CHECK(rep.gap_db > 0.0);
    // a report at exactly capacity has zero gap
    const AirReport tight = make_air_report(14.0, awgn_capacity_2d(14.0), 0.0);
    CHECK_THAT(tight.gap_db, Catch::Matchers::WithinAbs(0.0, 1e-9));
}
