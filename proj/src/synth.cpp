#include "posent/synth.hpp"
#include "posent/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace posent {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t splitmix64(std::uint64_t& state) {
    return mix64(state += kGolden);
}

double unit_double(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

std::string word_name(int index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "w%04d", index);
    return buf;
}

void validate_specs(int length, const std::vector<PositionSpec>& specs) {
    if (length < 1) throw config_error("corpus length must be >= 1");
    if (static_cast<int>(specs.size()) != length)
        throw config_error("need exactly one position spec per position 1.." +
                           std::to_string(length));
    for (int p = 0; p < length; ++p) {
        const PositionSpec& spec = specs[p];
        if (spec.position != p + 1)
            throw config_error("position spec " + std::to_string(p + 1) + " mislabeled");
        if (spec.distribution.empty())
            throw config_error("empty distribution at position " + std::to_string(p + 1));
        double total = 0;
        for (const auto& [word, prob] : spec.distribution) {
            if (word.empty()) throw config_error("empty word in position spec");
            if (!(prob > 0)) throw config_error("nonpositive probability in position spec");
            total += prob;
        }
        if (std::fabs(total - 1.0) > 1e-12)
            throw config_error("probabilities at position " + std::to_string(p + 1) +
                               " sum to " + std::to_string(total));
    }
}

} // namespace

LengthBin generate_positional_corpus(int length, const std::vector<PositionSpec>& specs,
                                     std::uint64_t n_sentences, std::uint64_t seed) {
    validate_specs(length, specs);
    if (n_sentences < 1) throw config_error("n_sentences must be >= 1");

    // cumulative tables once per position
    std::vector<std::vector<double>> cums(length);
    for (int p = 0; p < length; ++p) {
        double acc = 0;
        cums[p].reserve(specs[p].distribution.size());
        for (const auto& [word, prob] : specs[p].distribution) {
            acc += prob;
            cums[p].push_back(acc);
        }
        cums[p].back() = 1.0; // absorb rounding at the top
    }

    LengthBin bin;
    bin.length = length;
    bin.dedup_applied = false;
    bin.sentences.reserve(n_sentences);
    for (std::uint64_t i = 0; i < n_sentences; ++i) {
        // finalizer-mixed substream seed; a plain seed + (i+1)*kGolden start
        // would collide diagonally with the in-stream kGolden increments
        std::uint64_t state = mix64(seed + (i + 1) * kGolden);
        Sentence s;
        s.tokens.reserve(length);
        for (int p = 0; p < length; ++p) {
            const double u = unit_double(state);
            const auto& cum = cums[p];
            const std::size_t idx =
                std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
            const std::string& w = specs[p].distribution[std::min(idx, cum.size() - 1)].first;
            s.tokens.push_back(Token{w, w});
        }
        bin.sentences.push_back(std::move(s));
    }
    return bin;
}

std::vector<PositionSpec> uniform_specs(int length, int types) {
    if (types < 1) throw config_error("uniform_specs requires types >= 1");
    std::vector<std::pair<std::string, double>> dist;
    dist.reserve(types);
    for (int i = 0; i < types; ++i) dist.emplace_back(word_name(i), 1.0 / types);
    std::vector<PositionSpec> specs;
    specs.reserve(length);
    for (int p = 1; p <= length; ++p) specs.push_back({p, dist});
    return specs;
}

std::vector<PositionSpec> staircase_specs(int length, int initial_types, int medial_types,
                                          int final_types) {
    if (length < 3) throw config_error("staircase_specs requires length >= 3");
    auto uniform = [](int types) {
        std::vector<std::pair<std::string, double>> dist;
        dist.reserve(types);
        for (int i = 0; i < types; ++i) dist.emplace_back(word_name(i), 1.0 / types);
        return dist;
    };
    const auto initial = uniform(initial_types);
    const auto medial = uniform(medial_types);
    const auto final_ = uniform(final_types);
    std::vector<PositionSpec> specs;
    specs.reserve(length);
    for (int p = 1; p <= length; ++p) {
        if (p == 1) specs.push_back({p, initial});
        else if (p == length) specs.push_back({p, final_});
        else specs.push_back({p, medial});
    }
    return specs;
}

std::vector<PositionSpec> zipf_specs(int length, int types) {
    if (types < 1) throw config_error("zipf_specs requires types >= 1");
    double norm = 0;
    for (int r = 1; r <= types; ++r) norm += 1.0 / r;
    std::vector<std::pair<std::string, double>> dist;
    dist.reserve(types);
    double total = 0;
    for (int r = 1; r <= types; ++r) {
        double p = 1.0 / (r * norm);
        total += p;
        dist.emplace_back(word_name(r - 1), p);
    }
    dist.back().second += 1.0 - total; // make the sum exact
    std::vector<PositionSpec> specs;
    specs.reserve(length);
    for (int p = 1; p <= length; ++p) specs.push_back({p, dist});
    return specs;
}

void write_lines(const LengthBin& bin, std::ostream& out) {
    for (const Sentence& s : bin.sentences) {
        for (std::size_t i = 0; i < s.tokens.size(); ++i) {
            if (i) out << ' ';
            out << s.tokens[i].surface;
        }
        out << '\n';
    }
}

} // namespace posent
