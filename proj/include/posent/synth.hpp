#pragma once

#include "posent/corpus.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace posent {

// Target word distribution for one sentence position. Probabilities must be
// positive and sum to 1 within 1e-12.
struct PositionSpec {
    int position = 0; // 1-based
    std::vector<std::pair<std::string, double>> distribution;
};

// Draws n_sentences sentences of exactly `length` words; the token at
// position p comes from specs[p-1], positions independent. Sampling is
// splitmix64 with a per-sentence substream whose initial state is
//   mix64(seed + (i + 1) * 0x9E3779B97F4A7C15)
// (mix64 = the splitmix64 finalizer), so identical (specs, n, seed) give
// byte-identical corpora and sentences are independent of generation order.
// Throws config_error on malformed specs.
LengthBin generate_positional_corpus(int length, const std::vector<PositionSpec>& specs,
                                     std::uint64_t n_sentences, std::uint64_t seed);

// Uniform distribution over `types` words named w000..; word names are shared
// across positions.
std::vector<PositionSpec> uniform_specs(int length, int types);

// Low-entropy initial position, one shared medial distribution, high-entropy
// final position — the shape used by the pipeline oracle tests.
std::vector<PositionSpec> staircase_specs(int length, int initial_types, int medial_types,
                                          int final_types);

// Zipf-like probabilities p_r ∝ 1/r over `types` words, for skewed fixtures.
std::vector<PositionSpec> zipf_specs(int length, int types);

// Emits the bin in the `lines` input format.
void write_lines(const LengthBin& bin, std::ostream& out);

} // namespace posent
