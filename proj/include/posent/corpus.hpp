#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace posent {

struct Token {
    std::string surface;
    std::string norm; // normalized form used for all counting; non-empty, no whitespace
};

struct Sentence {
    std::vector<Token> tokens;
    int length() const { return static_cast<int>(tokens.size()); }
};

enum class InputFormat { Lines, Plain };

struct TokenizeConfig {
    bool lowercase = true;
};

// Splits raw text into sentence-candidate spans. `Lines`: every non-blank line
// is one span. `Plain`: spans end at '.', '!' or '?' followed by whitespace or
// end of input; the terminator stays in the span.
// Throws data_error naming the byte offset if the text is not valid UTF-8.
std::vector<std::string_view> segment_sentences(std::string_view text, InputFormat format);

// Tokens are maximal runs of letters, digits and apostrophes; a hyphen joins a
// run only when flanked by such characters on both sides. Everything else
// separates. The rule is fixed so results are reproducible; only case folding
// is configurable. Letter classification and lowercasing cover ASCII, Latin-1,
// Latin Extended-A, Greek and Cyrillic; other non-ASCII codepoints count as
// letters except the general-punctuation blocks.
std::vector<Token> tokenize(std::string_view span, const TokenizeConfig& config = {});

struct LengthBin {
    int length = 0;
    std::vector<Sentence> sentences;
    bool dedup_applied = false;
};

struct BinningResult {
    std::map<int, LengthBin> bins; // keyed by exact token count
    std::uint64_t sentences_seen = 0;
    std::uint64_t tokens_seen = 0; // across all seen sentences, in or out of range
    std::uint64_t sentences_kept = 0;
    std::uint64_t sentences_out_of_range = 0;
    std::uint64_t duplicates_dropped = 0;  // nonzero only when dedup
    std::uint64_t distinct_in_range = 0;   // distinct norm-sequences among in-range sentences
};

// Streaming accumulator so multi-file corpora need not be held as one vector.
// Deduplication is corpus-wide over norm-token sequences (first occurrence wins).
class LengthBinner {
public:
    // Throws config_error unless 1 <= min_len <= max_len.
    LengthBinner(int min_len, int max_len, bool dedup);

    void add(Sentence sentence);
    BinningResult take();

private:
    int min_len_;
    int max_len_;
    bool dedup_;
    BinningResult result_;
    std::unordered_set<std::uint64_t> seen_; // FNV-1a over norm sequences
};

// One-shot convenience over LengthBinner.
BinningResult bin_by_length(std::vector<Sentence> sentences, int min_len, int max_len, bool dedup);

// Reads a whole file; throws io_error on failure.
std::string read_file(const std::string& path);

} // namespace posent
