#pragma once

#include "posent/corpus.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace posent {

// Corpus-wide frequency table over normalized words. freq iterates in
// lexicographic order, which every downstream accumulation relies on for
// bit-identical results.
struct Lexicon {
    std::map<std::string, std::uint64_t> freq;
    std::uint64_t total_tokens = 0;
    std::uint64_t total_types() const { return freq.size(); }
};

// Counts every token of every binned sentence exactly once.
// Throws data_error("no sentences in configured length range") on an empty corpus.
Lexicon build_lexicon(const std::map<int, LengthBin>& bins);

struct SpectrumPoint {
    std::uint64_t frequency;  // p: a frequency value occurring in the lexicon
    std::uint64_t type_count; // s: number of word types with that frequency
};

// One point per distinct frequency value, ascending by frequency.
std::vector<SpectrumPoint> frequency_spectrum(const Lexicon& lex);

struct RankedWord {
    std::string word;
    std::uint64_t frequency;
    std::uint32_t type_rank; // 1 = most frequent; ties broken lexicographically
    std::uint32_t freq_rank; // distinct-frequency rank; tied words share it
};

// Both rank views, ordered by type_rank.
std::vector<RankedWord> rank_frequency(const Lexicon& lex);

enum class FrequencyClass : std::uint8_t { High, Medium, Low };

struct FrequencyClassMap {
    std::unordered_map<std::string, FrequencyClass> class_of;
    int high_cutoff = 0; // distinct-frequency ranks 1..high_cutoff -> High
    int low_cutoff = 0;  // last low_cutoff distinct-frequency ranks -> Low
    std::uint64_t distinct_frequencies = 0;
};

// Classes are assigned over distinct-frequency ranks, so tied words always land
// in the same class. Throws config_error when the cutoffs exceed the number of
// distinct frequency values.
FrequencyClassMap classify_frequency(const Lexicon& lex, int high_cutoff = 100, int low_cutoff = 100);

// CSV export: word,frequency,type_rank,freq_rank,class — ordered by type_rank.
void export_lexicon_csv(const Lexicon& lex, const FrequencyClassMap& classes, std::ostream& out);

} // namespace posent
