#pragma once

#include "posent/corpus.hpp"
#include "posent/lexicon.hpp"
#include "posent/positional.hpp"
#include "posent/powerlaw.hpp"
#include "posent/stats.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace posent {

struct RunConfig {
    std::vector<std::string> inputs;
    InputFormat format = InputFormat::Lines;
    bool lowercase = true;
    bool dedup = false;
    int min_len = 3;
    int max_len = 50;
    int high_cutoff = 100;
    int low_cutoff = 100;
    EntropyEstimator estimator = EntropyEstimator::Mle;
    MedialWindowSpec medial{};
    std::string out_dir; // empty: compute only, write nothing
    bool emit_csv_files = true;
    bool emit_json_file = true;
    bool emit_svg_files = false;
    int workers = 1;
    std::uint64_t min_sentences_per_bin = 100;
};

struct BinReport {
    int length = 0;
    std::uint64_t sentence_count = 0;
    std::vector<PositionProfile> profiles;
    int window_n = 0; // 0 when the bin is too short for the medial window
    std::vector<MedialTestResult> medial_tests;
    std::optional<ProportionTestResult> trend;
};

struct SentenceCounts {
    std::uint64_t seen = 0;
    std::uint64_t tokens_seen = 0;
    std::uint64_t in_range = 0;
    std::uint64_t distinct_in_range = 0;
    std::uint64_t out_of_range = 0;
    std::uint64_t duplicates_dropped = 0;
};

struct RunReport {
    RunConfig config;
    SentenceCounts sentences;
    Lexicon lexicon;
    FrequencyClassMap classes;
    std::uint64_t distinct_frequency_values = 0;
    bool spectrum_fit_available = false;
    PowerLawFit spectrum_fit;
    std::vector<BinReport> bins; // qualifying bins, ascending length
};

// Full pipeline: validate config, ingest, build lexicon and classes, fit the
// frequency spectrum, profile every qualifying bin (workers > 1 parallelizes
// across bins; outputs are byte-identical regardless), then write the
// requested outputs into config.out_dir.
// Throws config_error / data_error / io_error; the CLI maps them to exit codes.
RunReport run_profile(const RunConfig& config);

// Emission pieces, usable separately. All files end up directly in `dir`.
void emit_csv(const RunReport& report, const std::string& dir);          // profiles.csv, medial_tests.csv, trend_tests.csv, lexicon.csv
void emit_summary_json(const RunReport& report, const std::string& dir); // summary.json
void emit_svg(const RunReport& report, const std::string& dir);          // per-length charts

// summary.json "config" object -> RunConfig. out_dir and workers are not part
// of the echo (execution knobs); the caller sets them. Used by the
// reproducibility tests.
RunConfig config_from_summary_json(const std::string& json_text);

} // namespace posent
