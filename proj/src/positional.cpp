#include "posent/positional.hpp"
#include "posent/errors.hpp"
#include "posent/powerlaw.hpp"
#include "posent/stats.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>

namespace posent {

namespace {

std::size_t codepoint_count(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char ch : s)
        if ((ch & 0xC0) != 0x80) ++n;
    return n;
}

} // namespace

std::vector<PositionCounts> position_counts(const LengthBin& bin) {
    if (bin.sentences.empty()) throw data_error("position_counts: empty length bin");
    const int L = bin.length;
    std::vector<PositionCounts> cells(L);
    for (int p = 0; p < L; ++p) {
        cells[p].length = L;
        cells[p].position = p + 1;
    }
    for (const Sentence& s : bin.sentences) {
        for (int p = 0; p < L; ++p) ++cells[p].counts[s.tokens[p].norm];
    }
    for (auto& cell : cells) cell.tokens = bin.sentences.size();
    return cells;
}

double positional_entropy(const PositionCounts& pc, EntropyEstimator estimator) {
    if (pc.tokens == 0) throw data_error("positional_entropy: zero tokens");
    const double n = static_cast<double>(pc.tokens);
    // H = log2(N) - (sum c*log2 c)/N keeps uniform 2^k cases exact
    double weighted = 0;
    for (const auto& [word, c] : pc.counts)
        weighted += static_cast<double>(c) * std::log2(static_cast<double>(c));
    double h = std::log2(n) - weighted / n;
    if (h < 0) h = 0; // clamp rounding residue on single-type cells
    if (estimator == EntropyEstimator::MillerMadow) {
        const double k = static_cast<double>(pc.counts.size());
        h += (k - 1.0) / (2.0 * n * std::numbers::ln2);
    }
    return h;
}

double mean_word_length(const PositionCounts& pc) {
    if (pc.tokens == 0) throw data_error("mean_word_length: zero tokens");
    double chars = 0;
    for (const auto& [word, c] : pc.counts)
        chars += static_cast<double>(c) * static_cast<double>(codepoint_count(word));
    return chars / static_cast<double>(pc.tokens);
}

double mean_word_frequency(const PositionCounts& pc, const Lexicon& lex) {
    if (pc.tokens == 0) throw data_error("mean_word_frequency: zero tokens");
    double sum = 0;
    for (const auto& [word, c] : pc.counts) {
        auto it = lex.freq.find(word);
        if (it == lex.freq.end())
            throw data_error("mean_word_frequency: word '" + word + "' missing from lexicon");
        sum += static_cast<double>(c) * static_cast<double>(it->second);
    }
    return sum / static_cast<double>(pc.tokens);
}

ClassProportions class_proportions(const PositionCounts& pc, const FrequencyClassMap& classes) {
    if (pc.tokens == 0) throw data_error("class_proportions: zero tokens");
    std::uint64_t high = 0, medium = 0, low = 0;
    for (const auto& [word, c] : pc.counts) {
        auto it = classes.class_of.find(word);
        if (it == classes.class_of.end())
            throw data_error("class_proportions: word '" + word + "' has no frequency class");
        switch (it->second) {
            case FrequencyClass::High: high += c; break;
            case FrequencyClass::Medium: medium += c; break;
            case FrequencyClass::Low: low += c; break;
        }
    }
    const double n = static_cast<double>(pc.tokens);
    return {high / n, medium / n, low / n};
}

std::vector<RankProb> position_rank_distribution(const PositionCounts& pc) {
    if (pc.tokens == 0) throw data_error("position_rank_distribution: zero tokens");
    std::vector<std::pair<std::string_view, std::uint64_t>> items;
    items.reserve(pc.counts.size());
    for (const auto& [word, c] : pc.counts) items.emplace_back(word, c);
    // counts map iterates lexicographically, so a stable sort on descending
    // count gives the documented tie-break
    std::stable_sort(items.begin(), items.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<RankProb> out;
    out.reserve(items.size());
    const double n = static_cast<double>(pc.tokens);
    for (std::uint32_t i = 0; i < items.size(); ++i)
        out.push_back({i + 1, static_cast<double>(items[i].second) / n});
    return out;
}

std::vector<WordTrend> per_word_trends(const LengthBin& bin, const std::vector<int>& window) {
    if (window.size() < 3) throw config_error("per_word_trends requires a window of >= 3 positions");
    const int L = bin.length;
    for (int p : window)
        if (p < 1 || p > L) throw config_error("window position out of range");

    // per-word count series over the window, zeros included
    std::map<std::string, std::vector<std::uint64_t>> series;
    const auto cells = position_counts(bin);
    for (std::size_t w = 0; w < window.size(); ++w) {
        const PositionCounts& cell = cells[window[w] - 1];
        for (const auto& [word, c] : cell.counts) {
            auto [it, inserted] = series.try_emplace(word);
            if (inserted) it->second.assign(window.size(), 0);
            it->second[w] = c;
        }
    }

    Eigen::VectorXd pos(window.size());
    for (std::size_t w = 0; w < window.size(); ++w) pos[w] = window[w];

    std::vector<WordTrend> trends;
    trends.reserve(series.size());
    for (const auto& [word, counts] : series) {
        WordTrend t;
        t.word = word;
        const std::size_t occupied =
            static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(),
                                                   [](std::uint64_t c) { return c > 0; }));
        if (occupied >= 2) {
            Eigen::VectorXd ys(counts.size());
            for (std::size_t w = 0; w < counts.size(); ++w) ys[w] = static_cast<double>(counts[w]);
            if ((ys.array() - ys.mean()).matrix().squaredNorm() > 0) {
                t.r = pearson_r(pos, ys);
                if (t.r > 0) t.sign = TrendSign::Increasing;
                else if (t.r < 0) t.sign = TrendSign::Decreasing;
            }
        }
        trends.push_back(std::move(t));
    }
    return trends;
}

std::vector<PositionProfile> profile_bin(const LengthBin& bin, const Lexicon& lex,
                                         const FrequencyClassMap& classes,
                                         EntropyEstimator estimator) {
    const auto cells = position_counts(bin);
    std::vector<PositionProfile> profiles;
    profiles.reserve(cells.size());
    for (const PositionCounts& cell : cells) {
        PositionProfile prof;
        prof.length = cell.length;
        prof.position = cell.position;
        prof.tokens = cell.tokens;
        prof.type_count = cell.counts.size();
        prof.entropy_bits = positional_entropy(cell, estimator);
        prof.mean_word_len = mean_word_length(cell);
        prof.mean_word_freq = mean_word_frequency(cell, lex);
        const ClassProportions props = class_proportions(cell, classes);
        prof.prop_high = props.high;
        prof.prop_medium = props.medium;
        prof.prop_low = props.low;
        if (prof.type_count >= 3) {
            const auto dist = position_rank_distribution(cell);
            Eigen::VectorXd rank(dist.size()), prob(dist.size());
            for (std::size_t i = 0; i < dist.size(); ++i) {
                rank[i] = dist[i].rank;
                prob[i] = dist[i].probability;
            }
            const LogLogFit fit = fit_power_law_loglog(rank, prob);
            prof.plaw_exponent = fit.b;
            prof.plaw_r2 = fit.adj_r2;
        }
        profiles.push_back(prof);
    }
    return profiles;
}

} // namespace posent
