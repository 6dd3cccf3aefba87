#pragma once

#include "posent/corpus.hpp"
#include "posent/lexicon.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace posent {

// Word multiset observed at one (sentence length, position) cell.
// tokens always equals the number of sentences in the bin.
struct PositionCounts {
    int length = 0;
    int position = 0; // 1-based
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t tokens = 0;
};

// One PositionCounts per position 1..L; throws data_error on an empty bin.
std::vector<PositionCounts> position_counts(const LengthBin& bin);

enum class EntropyEstimator { Mle, MillerMadow };

// Shannon entropy in bits of the empirical word distribution at the position.
// MillerMadow adds the (K-1)/(2N ln 2) small-sample bias correction.
double positional_entropy(const PositionCounts& pc, EntropyEstimator estimator = EntropyEstimator::Mle);

// Token-weighted mean of Unicode scalar counts of the normalized forms.
double mean_word_length(const PositionCounts& pc);

// Token-weighted mean corpus frequency; throws data_error when a word is
// missing from the lexicon.
double mean_word_frequency(const PositionCounts& pc, const Lexicon& lex);

struct ClassProportions {
    double high = 0;
    double medium = 0;
    double low = 0;
};

// Token-weighted proportions of the three frequency classes; sums to 1.
ClassProportions class_proportions(const PositionCounts& pc, const FrequencyClassMap& classes);

struct RankProb {
    std::uint32_t rank; // 1 = most probable
    double probability;
};

// Empirical probabilities sorted descending, ties broken lexicographically.
std::vector<RankProb> position_rank_distribution(const PositionCounts& pc);

enum class TrendSign { Increasing, Decreasing, Flat };

struct WordTrend {
    std::string word;
    TrendSign sign = TrendSign::Flat;
    double r = 0; // correlation of per-position count with position over the window
};

// Per-word frequency trend across the medial window. A word seen at fewer
// than two window positions (or with a constant count series) is Flat and
// excluded from the proportion test. Requires window size >= 3.
std::vector<WordTrend> per_word_trends(const LengthBin& bin, const std::vector<int>& window);

struct PositionProfile {
    int length = 0;
    int position = 0;
    std::uint64_t tokens = 0;
    std::uint64_t type_count = 0;
    double entropy_bits = 0;
    double mean_word_len = 0;
    double mean_word_freq = 0;
    double prop_high = 0;
    double prop_medium = 0;
    double prop_low = 0;
    // two-parameter log-log fit of the rank-probability distribution;
    // NaN when the position has fewer than 3 word types
    double plaw_exponent = std::numeric_limits<double>::quiet_NaN();
    double plaw_r2 = std::numeric_limits<double>::quiet_NaN();
};

// All per-position statistics for one bin.
std::vector<PositionProfile> profile_bin(const LengthBin& bin, const Lexicon& lex,
                                         const FrequencyClassMap& classes,
                                         EntropyEstimator estimator = EntropyEstimator::Mle);

} // namespace posent
