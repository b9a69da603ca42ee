// Command-line front end: codebook construction and inspection, bit-exact
// file encode/decode with framed output, and CSV sweeps of rate loss and
// AWGN achievable rates.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpdm/mpdm.hpp"

namespace {

// Exit codes: 0 success, 1 usage, 2 I/O, 3 data integrity, 4 compute.
enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kData = 3, kCompute = 4 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_pmf(const std::string& text) {
    std::vector<double> p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            p.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw mpdm::InvalidArgument("--pmf: cannot parse '" + item + "'");
        }
    }
    if (p.empty()) throw mpdm::InvalidArgument("--pmf: empty list");
    return p;
}

std::vector<mpdm::DmLength> parse_lengths(const std::string& text) {
    std::vector<mpdm::DmLength> lengths;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "inf") {
            lengths.push_back(std::nullopt);
        } else {
            try {
                int n = std::stoi(item);
                if (n < 1) throw std::invalid_argument(item);
                lengths.push_back(n);
            } catch (const std::exception&) {
                throw mpdm::InvalidArgument("--lengths: cannot parse '" + item + "'");
            }
        }
    }
    if (lengths.empty()) throw mpdm::InvalidArgument("--lengths: empty list");
    return lengths;
}

mpdm::DmKind parse_mode(const std::string& mode) {
    if (mode == "ccdm") return mpdm::DmKind::ccdm;
    if (mode == "mpdm") return mpdm::DmKind::mpdm;
    throw mpdm::InvalidArgument("--mode must be ccdm or mpdm");
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure on " + path);
    return data;
}

void write_file(const std::string& path, const void* data, std::size_t size) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw IoError("write failure on " + path);
}

mpdm::MpdmCodebook load_codebook(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return mpdm::load_descriptor(in);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

int cmd_build(const std::string& pmf_text, int n, const std::string& out_path) {
    mpdm::Pmf target(parse_pmf(pmf_text));
    mpdm::MpdmCodebook cb = mpdm::build_codebook(target, n);
    const mpdm::Pmf quantized = mpdm::quantized_pmf(cb.typical());
    const double h = mpdm::entropy(quantized);
    const double loss = mpdm::rate_loss(cb.input_bits(), n, quantized);
    {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot open " + out_path + " for writing");
        mpdm::save_descriptor(out, cb);
    }
    std::cout << "n: " << cb.block_length() << "\n"
              << "k: " << cb.input_bits() << "\n"
              << "rate: " << fmt(static_cast<double>(cb.input_bits()) / n) << " bit/symbol\n"
              << "entropy: " << fmt(h) << " bit\n"
              << "rate_loss: " << fmt(loss) << " bit/symbol\n"
              << "pairs: " << cb.pair_count() << "\n"
              << "codebook: " << out_path << "\n";
    if (cb.input_bits() == 0)
        std::cout << "warning: degenerate type, codebook carries no payload bits\n";
    return kOk;
}

int cmd_info(const std::string& path) {
    mpdm::MpdmCodebook cb = load_codebook(path);
    std::cout << "n: " << cb.block_length() << "  k: " << cb.input_bits()
              << "  alphabet: " << cb.alphabet_size() << "\n";
    std::cout << "c_typ:";
    for (int i = 0; i < cb.alphabet_size(); ++i) std::cout << ' ' << cb.typical()[static_cast<std::size_t>(i)];
    std::cout << "\npairs: " << cb.pair_count() << "\n";
    mpdm::BigCount usable_total = 0;
    for (std::size_t i = 0; i < cb.pair_count(); ++i) {
        const auto v = cb.pair(i);
        usable_total += mpdm::pow2(static_cast<unsigned>(v.payload_bits));
        std::cout << "  [" << i << "] prefix=" << (v.prefix.empty() ? "(empty)" : v.prefix)
                  << " k_l=" << v.payload_bits << " c=";
        for (int x : v.c.counts()) std::cout << ' ' << x;
        std::cout << "  c_bar=";
        for (int x : v.c_bar.counts()) std::cout << ' ' << x;
        if (v.degenerate) std::cout << "  (degenerate)";
        std::cout << "\n";
    }
    const bool kraft_tight = usable_total == mpdm::pow2(static_cast<unsigned>(cb.input_bits()));
    std::cout << "kraft_sum: " << (kraft_tight ? "1 (exact)" : "NOT TIGHT") << "\n";
    return kraft_tight ? kOk : kData;
}

int cmd_encode(const std::string& cb_path, const std::string& in_path, const std::string& out_path) {
    mpdm::MpdmCodebook cb = load_codebook(cb_path);
    std::vector<std::uint8_t> payload = read_file(in_path);
    mpdm::Frame frame = mpdm::encode_stream(cb, payload);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot open " + out_path + " for writing");
    mpdm::write_frame(out, frame);
    std::cout << "blocks: " << frame.blocks << "\n";
    return kOk;
}

int cmd_decode(const std::string& cb_path, const std::string& in_path, const std::string& out_path) {
    mpdm::MpdmCodebook cb = load_codebook(cb_path);
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw IoError("cannot open " + in_path);
    mpdm::Frame frame = mpdm::read_frame(in);
    std::vector<std::uint8_t> payload = mpdm::decode_stream(cb, frame);
    write_file(out_path, payload.data(), payload.size());
    std::cout << "blocks: " << frame.blocks << "\n";
    return kOk;
}

int cmd_sweep_rateloss(const std::string& pmf_text, int n_min, int n_max, const std::string& mode,
                       const std::string& out_path) {
    mpdm::Pmf target(parse_pmf(pmf_text));
    const auto rows = mpdm::sweep_rate_loss(target, n_min, n_max, parse_mode(mode));
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open " + out_path + " for writing");
    out << "n,k,rate,rate_loss\n";
    for (const auto& r : rows)
        out << r.n << ',' << r.k << ',' << fmt(r.rate) << ',' << fmt(r.rate_loss) << '\n';
    if (!out) throw IoError("write failure on " + out_path);
    std::cout << "rows: " << rows.size() << "\n";
    return kOk;
}

int cmd_sweep_air(double snr_min, double snr_max, double snr_step, int m,
                  const std::string& lengths_text, const std::string& mode,
                  const std::string& out_path) {
    mpdm::AirSweepSpec spec;
    spec.snr_min = snr_min;
    spec.snr_max = snr_max;
    spec.snr_step = snr_step;
    spec.m = m;
    spec.kind = parse_mode(mode);
    spec.lengths = parse_lengths(lengths_text);
    const auto rows = mpdm::sweep_air(spec);
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open " + out_path + " for writing");
    out << "snr_db,capacity,r_bmd_uniform,r_bmd_shaped";
    for (const auto& len : spec.lengths) {
        const std::string tag = len ? "n" + std::to_string(*len) : "inf";
        out << ",air_dm_" << tag << ",gap_db_" << tag;
    }
    out << '\n';
    for (const auto& r : rows) {
        out << fmt(r.snr_db) << ',' << fmt(r.capacity) << ',' << fmt(r.r_bmd_uniform) << ','
            << fmt(r.r_bmd_shaped);
        for (const auto& rep : r.per_length) out << ',' << fmt(rep.air_dm) << ',' << fmt(rep.gap_db);
        out << '\n';
    }
    if (!out) throw IoError("write failure on " + out_path);
    std::cout << "rows: " << rows.size() << "\n";
    return kOk;
}

template <class Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const mpdm::ComputeError& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return kCompute;
    } catch (const mpdm::ParseError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const mpdm::LengthError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const mpdm::CompositionMismatch& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const mpdm::UnknownComposition& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const mpdm::UnaddressableSequence& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const mpdm::InvalidArgument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kIo;
    } catch (const mpdm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCompute;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiset-partition / constant-composition distribution matching"};
    app.require_subcommand(1);

    std::string pmf_text, out_path, in_path, cb_path, mode = "mpdm", lengths_text;
    int n = 0, n_min = 1, n_max = 100, m = 3;
    double snr_min = 8.0, snr_max = 18.0, snr_step = 0.5;

    auto* build = app.add_subcommand("build", "quantize a PMF and construct a codebook");
    build->add_option("--pmf", pmf_text, "comma-separated target probabilities")->required();
    build->add_option("--n", n, "output block length in amplitude symbols")->required();
    build->add_option("--out", out_path, "codebook descriptor path (JSON)")->required();

    auto* info = app.add_subcommand("info", "print a codebook descriptor");
    info->add_option("codebook", cb_path, "descriptor path")->required();

    auto* encode = app.add_subcommand("encode", "map packed data bits to framed amplitude blocks");
    encode->add_option("--codebook", cb_path)->required();
    encode->add_option("--in", in_path, "packed bits, MSB first; a whole number of k-bit words")->required();
    encode->add_option("--out", out_path, "framed amplitude output")->required();

    auto* decode = app.add_subcommand("decode", "recover data bits from a framed amplitude file");
    decode->add_option("--codebook", cb_path)->required();
    decode->add_option("--in", in_path, "framed amplitude input")->required();
    decode->add_option("--out", out_path, "packed bit output")->required();

    auto* swrl = app.add_subcommand("sweep-rateloss", "rate loss over block length (CSV)");
    swrl->add_option("--pmf", pmf_text)->required();
    swrl->add_option("--n-min", n_min)->required();
    swrl->add_option("--n-max", n_max)->required();
    swrl->add_option("--mode", mode, "ccdm or mpdm");
    swrl->add_option("--out", out_path)->required();

    auto* swair = app.add_subcommand("sweep-air", "achievable rates over SNR (CSV)");
    swair->add_option("--snr-min", snr_min);
    swair->add_option("--snr-max", snr_max);
    swair->add_option("--snr-step", snr_step);
    swair->add_option("--m", m, "bits per 1D ASK symbol (2, 3, or 4)");
    swair->add_option("--lengths", lengths_text, "matcher lengths, e.g. 60,250,inf")->required();
    swair->add_option("--mode", mode, "ccdm or mpdm");
    swair->add_option("--out", out_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    if (build->parsed()) return guarded([&] { return cmd_build(pmf_text, n, out_path); });
    if (info->parsed()) return guarded([&] { return cmd_info(cb_path); });
    if (encode->parsed()) return guarded([&] { return cmd_encode(cb_path, in_path, out_path); });
    if (decode->parsed()) return guarded([&] { return cmd_decode(cb_path, in_path, out_path); });
    if (swrl->parsed())
        return guarded([&] { return cmd_sweep_rateloss(pmf_text, n_min, n_max, mode, out_path); });
    if (swair->parsed())
        return guarded([&] {
            return cmd_sweep_air(snr_min, snr_max, snr_step, m, lengths_text, mode, out_path);
        });
    return kUsage;
}
