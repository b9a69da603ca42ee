#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mpdm/codebook.hpp"
#include "mpdm/errors.hpp"

namespace mpdm {

inline constexpr int kDescriptorVersion = 1;

// Serializes a codebook as versioned JSON: type parameters, target PMF, and
// the ordered pair list (both member compositions, k_l, and the prefix bits
// as text). Loading re-derives the interval layout from the pair order and
// refuses descriptors whose prefixes or usable counts are inconsistent, so a
// loaded codebook encodes and decodes byte-identically to the original.
inline void save_descriptor(std::ostream& out, const MpdmCodebook& cb) {
    nlohmann::json j;
    j["format"] = "mpdm-codebook";
    j["version"] = kDescriptorVersion;
    j["n"] = cb.block_length();
    j["k"] = cb.input_bits();
    j["alphabet_size"] = cb.alphabet_size();
    j["c_typ"] = cb.typical().counts();
    j["target_pmf"] = cb.target().probs();
    nlohmann::json pairs = nlohmann::json::array();
    for (std::size_t i = 0; i < cb.pair_count(); ++i) {
        const MpdmCodebook::PairView v = cb.pair(i);
        pairs.push_back({{"c", v.c.counts()},
                         {"c_bar", v.c_bar.counts()},
                         {"k_l", v.payload_bits},
                         {"prefix", v.prefix}});
    }
    j["pairs"] = std::move(pairs);
    out << j.dump(2) << '\n';
    if (!out) throw Error("save_descriptor: stream failure");
}

inline MpdmCodebook load_descriptor(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("descriptor: ") + e.what(), e.byte);
    }
    try {
        if (j.at("format").get<std::string>() != "mpdm-codebook")
            throw ParseError("descriptor: wrong format tag");
        if (j.at("version").get<int>() != kDescriptorVersion)
            throw ParseError("descriptor: unsupported version");
        const int n = j.at("n").get<int>();
        const int k = j.at("k").get<int>();
        const int a = j.at("alphabet_size").get<int>();
        Composition c_typ(j.at("c_typ").get<std::vector<int>>());
        if (c_typ.total() != n || c_typ.alphabet_size() != a)
            throw ParseError("descriptor: c_typ inconsistent with n or alphabet_size");
        Pmf target(j.at("target_pmf").get<std::vector<double>>());
        if (static_cast<int>(target.size()) != a)
            throw ParseError("descriptor: target_pmf size mismatch");

        std::vector<std::pair<std::vector<int>, int>> pairs;
        for (const auto& p : j.at("pairs"))
            pairs.emplace_back(p.at("c").get<std::vector<int>>(), p.at("k_l").get<int>());
        MpdmCodebook cb = assemble_codebook(c_typ, target, k, pairs);

        // prefix text and complements must match what the layout implies
        std::size_t idx = 0;
        for (const auto& p : j.at("pairs")) {
            const MpdmCodebook::PairView v = cb.pair(idx);
            if (p.at("prefix").get<std::string>() != v.prefix)
                throw ParseError("descriptor: stored prefix disagrees with canonical layout (pair " +
                                 std::to_string(idx) + ")");
            if (p.at("c_bar").get<std::vector<int>>() != v.c_bar.counts())
                throw ParseError("descriptor: stored complement disagrees (pair " + std::to_string(idx) + ")");
            ++idx;
        }
        return cb;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("descriptor: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("descriptor: ") + e.what());
    }
}

}  // namespace mpdm
