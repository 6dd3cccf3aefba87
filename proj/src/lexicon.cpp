#include "posent/lexicon.hpp"
#include "posent/errors.hpp"

#include <algorithm>
#include <ostream>

namespace posent {

Lexicon build_lexicon(const std::map<int, LengthBin>& bins) {
    std::unordered_map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;
    for (const auto& [len, bin] : bins) {
        for (const Sentence& s : bin.sentences) {
            for (const Token& t : s.tokens) {
                ++counts[t.norm];
                ++total;
            }
        }
    }
    if (total == 0) throw data_error("no sentences in configured length range");
    Lexicon lex;
    lex.total_tokens = total;
    // materialize sorted; hinted insertion keeps this linear
    std::vector<std::pair<std::string, std::uint64_t>> items;
    items.reserve(counts.size());
    while (!counts.empty()) {
        auto node = counts.extract(counts.begin());
        items.emplace_back(std::move(node.key()), node.mapped());
    }
    std::sort(items.begin(), items.end());
    for (auto& kv : items) lex.freq.emplace_hint(lex.freq.end(), std::move(kv.first), kv.second);
    return lex;
}

std::vector<SpectrumPoint> frequency_spectrum(const Lexicon& lex) {
    if (lex.freq.empty()) throw data_error("frequency_spectrum: empty lexicon");
    std::map<std::uint64_t, std::uint64_t> by_freq;
    for (const auto& [word, f] : lex.freq) ++by_freq[f];
    std::vector<SpectrumPoint> points;
    points.reserve(by_freq.size());
    for (const auto& [p, s] : by_freq) points.push_back({p, s});
    return points;
}

std::vector<RankedWord> rank_frequency(const Lexicon& lex) {
    if (lex.freq.empty()) throw data_error("rank_frequency: empty lexicon");
    std::vector<RankedWord> ranked;
    ranked.reserve(lex.freq.size());
    for (const auto& [word, f] : lex.freq) ranked.push_back({word, f, 0, 0});
    // lexicographic order is already in place; stable sort by descending
    // frequency keeps the documented tie-break
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedWord& a, const RankedWord& b) { return a.frequency > b.frequency; });
    std::uint32_t freq_rank = 0;
    std::uint64_t prev_freq = 0;
    for (std::uint32_t i = 0; i < ranked.size(); ++i) {
        ranked[i].type_rank = i + 1;
        if (i == 0 || ranked[i].frequency != prev_freq) {
            ++freq_rank;
            prev_freq = ranked[i].frequency;
        }
        ranked[i].freq_rank = freq_rank;
    }
    return ranked;
}

FrequencyClassMap classify_frequency(const Lexicon& lex, int high_cutoff, int low_cutoff) {
    if (high_cutoff < 0 || low_cutoff < 0)
        throw config_error("frequency class cutoffs must be nonnegative");
    auto ranked = rank_frequency(lex);
    std::uint64_t distinct = ranked.empty() ? 0 : ranked.back().freq_rank;
    if (static_cast<std::uint64_t>(high_cutoff) + static_cast<std::uint64_t>(low_cutoff) > distinct)
        throw config_error("frequency class cutoffs (" + std::to_string(high_cutoff) + " + " +
                           std::to_string(low_cutoff) + ") exceed the " + std::to_string(distinct) +
                           " distinct frequency values");
    FrequencyClassMap out;
    out.high_cutoff = high_cutoff;
    out.low_cutoff = low_cutoff;
    out.distinct_frequencies = distinct;
    std::uint64_t low_start = distinct - static_cast<std::uint64_t>(low_cutoff); // ranks > low_start are Low
    out.class_of.reserve(ranked.size());
    for (const RankedWord& rw : ranked) {
        FrequencyClass cls = FrequencyClass::Medium;
        if (rw.freq_rank <= static_cast<std::uint64_t>(high_cutoff)) cls = FrequencyClass::High;
        else if (rw.freq_rank > low_start) cls = FrequencyClass::Low;
        out.class_of.emplace(rw.word, cls);
    }
    return out;
}

void export_lexicon_csv(const Lexicon& lex, const FrequencyClassMap& classes, std::ostream& out) {
    out << "word,frequency,type_rank,freq_rank,class\n";
    for (const RankedWord& rw : rank_frequency(lex)) {
        const char* cls = "medium";
        auto it = classes.class_of.find(rw.word);
        if (it != classes.class_of.end()) {
            if (it->second == FrequencyClass::High) cls = "high";
            else if (it->second == FrequencyClass::Low) cls = "low";
        }
        out << rw.word << ',' << rw.frequency << ',' << rw.type_rank << ',' << rw.freq_rank << ','
            << cls << '\n';
    }
}

} // namespace posent
