#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "posent/errors.hpp"
#include "posent/positional.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace posent;

namespace {

LengthBin bin_of(std::initializer_list<std::initializer_list<const char*>> rows) {
    LengthBin bin;
    for (auto row : rows) {
        Sentence s;
        for (const char* w : row) s.tokens.push_back(Token{w, w});
        bin.length = s.length();
        bin.sentences.push_back(std::move(s));
    }
    return bin;
}

PositionCounts cell_of(std::initializer_list<std::pair<const char*, std::uint64_t>> counts) {
    PositionCounts pc;
    pc.length = 1;
    pc.position = 1;
    for (const auto& [w, c] : counts) {
        pc.counts.emplace(w, c);
        pc.tokens += c;
    }
    return pc;
}

Lexicon lexicon_of(std::initializer_list<std::pair<const char*, std::uint64_t>> freqs) {
    Lexicon lex;
    for (const auto& [w, f] : freqs) {
        lex.freq.emplace(w, f);
        lex.total_tokens += f;
    }
    return lex;
}

} // namespace

TEST_CASE("position counts per cell") {
    const auto cells = position_counts(bin_of({{"a", "b"}, {"a", "c"}}));
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].counts.at("a") == 2);
    CHECK(cells[0].tokens == 2);
    CHECK(cells[1].counts.at("b") == 1);
    CHECK(cells[1].counts.at("c") == 1);

    const auto single = position_counts(bin_of({{"x", "y", "z"}}));
    for (const auto& cell : single) {
        CHECK(cell.counts.size() == 1);
        CHECK(cell.tokens == 1);
    }

    const auto dup = position_counts(
        bin_of({{"x", "y", "z"}, {"x", "y", "z"}, {"x", "y", "z"}, {"x", "y", "z"}}));
    for (const auto& cell : dup) {
        CHECK(cell.counts.size() == 1);
        CHECK(cell.counts.begin()->second == 4);
    }

    CHECK_THROWS_AS(position_counts(LengthBin{}), data_error);
}

TEST_CASE("entropy on pinned distributions") {
    CHECK(positional_entropy(cell_of({{"a", 4}})) == 0.0);
    CHECK(positional_entropy(cell_of({{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}})) ==
          doctest::Approx(2.0).epsilon(1e-12));
    // Eq-style hand sum: 0.5 + 0.5 + 0.5
    CHECK(positional_entropy(cell_of({{"a", 1}, {"b", 1}, {"c", 2}})) ==
          doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("uniform 2^k distributions give exactly k bits") {
    for (int k = 0; k <= 10; ++k) {
        PositionCounts pc;
        pc.tokens = 0;
        for (int i = 0; i < (1 << k); ++i) {
            pc.counts.emplace("w" + std::to_string(i), 3);
            pc.tokens += 3;
        }
        CHECK(std::fabs(positional_entropy(pc) - k) <= 1e-12);
    }
}

TEST_CASE("entropy matches the direct-sum oracle on random cells") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 60; ++rep) {
        PositionCounts pc;
        const int types = 1 + static_cast<int>(rng() % 40);
        for (int i = 0; i < types; ++i) {
            const std::uint64_t c = 1 + rng() % 50;
            pc.counts.emplace("w" + std::to_string(i), c);
            pc.tokens += c;
        }
        const double direct = oracle::entropy_direct_bits(pc.counts);
        CHECK(positional_entropy(pc) == doctest::Approx(direct).epsilon(1e-12));
        // bound: 0 <= H <= log2(K), tight only for uniform counts
        CHECK(positional_entropy(pc) >= 0.0);
        CHECK(positional_entropy(pc) <= std::log2(static_cast<double>(types)) + 1e-12);
        bool uniform = true;
        for (const auto& [w, c] : pc.counts) uniform = uniform && c == pc.counts.begin()->second;
        if (!uniform && types >= 2)
            CHECK(positional_entropy(pc) < std::log2(static_cast<double>(types)));
    }
}

TEST_CASE("Miller-Madow exceeds MLE for K >= 2") {
    std::mt19937_64 rng(32);
    for (int rep = 0; rep < 30; ++rep) {
        PositionCounts pc;
        const int types = 2 + static_cast<int>(rng() % 20);
        for (int i = 0; i < types; ++i) {
            const std::uint64_t c = 1 + rng() % 9;
            pc.counts.emplace("w" + std::to_string(i), c);
            pc.tokens += c;
        }
        const double mle = positional_entropy(pc, EntropyEstimator::Mle);
        const double mm = positional_entropy(pc, EntropyEstimator::MillerMadow);
        CHECK(mm > mle);
        CHECK(mm - mle ==
              doctest::Approx((types - 1) / (2.0 * pc.tokens * std::log(2.0))).epsilon(1e-9));
    }
}

TEST_CASE("mean word length") {
    CHECK(mean_word_length(cell_of({{"abc", 1}})) == doctest::Approx(3.0));
    CHECK(mean_word_length(cell_of({{"ab", 1}, {"abcd", 1}})) == doctest::Approx(3.0));
    CHECK(mean_word_length(cell_of({{"ab", 3}, {"abcd", 1}})) == doctest::Approx(2.5));
    // Unicode scalars, not bytes: naïve is five characters
    CHECK(mean_word_length(cell_of({{"naïve", 1}})) == doctest::Approx(5.0));
}

TEST_CASE("mean word frequency") {
    const Lexicon lex = lexicon_of({{"the", 1000}, {"cat", 10}});
    CHECK(mean_word_frequency(cell_of({{"the", 3}, {"cat", 1}}), lex) == doctest::Approx(752.5));
    CHECK(mean_word_frequency(cell_of({{"cat", 5}}), lexicon_of({{"cat", 5}})) == doctest::Approx(5.0));
    const Lexicon flat = lexicon_of({{"a", 7}, {"b", 7}, {"c", 7}});
    CHECK(mean_word_frequency(cell_of({{"a", 2}, {"c", 3}}), flat) == doctest::Approx(7.0));
    CHECK_THROWS_AS(mean_word_frequency(cell_of({{"dog", 1}}), lex), data_error);
}

TEST_CASE("class proportions") {
    FrequencyClassMap classes;
    classes.class_of = {{"h", FrequencyClass::High},
                        {"m", FrequencyClass::Medium},
                        {"l", FrequencyClass::Low}};
    const auto all_high = class_proportions(cell_of({{"h", 4}}), classes);
    CHECK(all_high.high == doctest::Approx(1.0));
    CHECK(all_high.medium == doctest::Approx(0.0));

    const auto mixed = class_proportions(cell_of({{"h", 1}, {"m", 1}, {"l", 2}}), classes);
    CHECK(mixed.high == doctest::Approx(0.25));
    CHECK(mixed.medium == doctest::Approx(0.25));
    CHECK(mixed.low == doctest::Approx(0.5));
    CHECK(mixed.high + mixed.medium + mixed.low == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(class_proportions(cell_of({{"unknown", 1}}), classes), data_error);
}

TEST_CASE("rank distribution") {
    const auto dist = position_rank_distribution(cell_of({{"a", 2}, {"b", 1}, {"c", 1}}));
    REQUIRE(dist.size() == 3);
    CHECK(dist[0].rank == 1);
    CHECK(dist[0].probability == doctest::Approx(0.5));
    CHECK(dist[1].probability == doctest::Approx(0.25));
    CHECK(dist[2].probability == doctest::Approx(0.25));

    const auto single = position_rank_distribution(cell_of({{"only", 9}}));
    REQUIRE(single.size() == 1);
    CHECK(single[0].probability == doctest::Approx(1.0));

    std::mt19937_64 rng(41);
    PositionCounts pc;
    for (int i = 0; i < 25; ++i) {
        pc.counts.emplace("w" + std::to_string(i), 1 + rng() % 30);
        pc.tokens += pc.counts.at("w" + std::to_string(i));
    }
    double sum = 0;
    double prev = 1.0;
    for (const auto& rp : position_rank_distribution(pc)) {
        sum += rp.probability;
        CHECK(rp.probability <= prev + 1e-15);
        prev = rp.probability;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("per-word trends over a window") {
    // word "up" occurs 1,2,3,4 times across positions 1..4; "down" reversed;
    // "flat" constant; "once" only at one position
    LengthBin bin;
    bin.length = 4;
    const auto add = [&](const char* p1, const char* p2, const char* p3, const char* p4) {
        Sentence s;
        for (const char* w : {p1, p2, p3, p4}) s.tokens.push_back(Token{w, w});
        bin.sentences.push_back(std::move(s));
    };
    // 10 sentences arranged so the window count series are exactly
    // up [1,2,3,4], down [4,3,2,1], flat [2,2,2,2], once [0,1,0,0]
    add("up", "up", "up", "up");
    add("down", "up", "up", "up");
    add("down", "down", "up", "up");
    add("down", "down", "down", "up");
    add("down", "down", "down", "down");
    add("flat", "flat", "flat", "flat");
    add("flat", "once", "flat", "flat");
    add("f0", "flat", "f1", "f2");
    add("f3", "f4", "f5", "f6");
    add("f7", "f8", "f9", "f10");

    const std::vector<int> window{1, 2, 3, 4};
    const auto trends = per_word_trends(bin, window);
    const auto find = [&](const std::string& w) {
        return *std::find_if(trends.begin(), trends.end(),
                             [&](const WordTrend& t) { return t.word == w; });
    };
    CHECK(find("up").sign == TrendSign::Increasing);
    CHECK(find("up").r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(find("down").sign == TrendSign::Decreasing);
    CHECK(find("down").r == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(find("flat").sign == TrendSign::Flat); // counts 2,2,2,2
    CHECK(find("once").sign == TrendSign::Flat); // single-position word
    CHECK(find("once").r == 0.0);

    CHECK_THROWS_AS(per_word_trends(bin, std::vector<int>{1, 2}), config_error);
    CHECK_THROWS_AS(per_word_trends(bin, std::vector<int>{1, 2, 9}), config_error);
}

TEST_CASE("profile_bin on degenerate and uniform bins") {
    const auto identical = profile_bin(
        bin_of({{"a", "b", "c"}, {"a", "b", "c"}, {"a", "b", "c"}}),
        lexicon_of({{"a", 3}, {"b", 3}, {"c", 3}}),
        classify_frequency(lexicon_of({{"a", 3}, {"b", 3}, {"c", 3}}), 1, 0));
    REQUIRE(identical.size() == 3);
    for (const auto& prof : identical) {
        CHECK(prof.entropy_bits == 0.0);
        CHECK(prof.type_count == 1);
        CHECK(std::isnan(prof.plaw_exponent)); // fewer than 3 types
    }

    // uniform 16-word vocabulary at one position -> 4 bits
    LengthBin bin;
    bin.length = 2;
    Lexicon lex;
    for (int i = 0; i < 16; ++i) {
        const std::string w = "w" + std::to_string(i);
        Sentence s;
        s.tokens.push_back(Token{"start", "start"});
        s.tokens.push_back(Token{w, w});
        bin.sentences.push_back(std::move(s));
        lex.freq.emplace(w, 1);
        lex.total_tokens += 1;
    }
    lex.freq.emplace("start", 16);
    lex.total_tokens += 16;
    const auto profiles = profile_bin(bin, lex, classify_frequency(lex, 1, 1));
    REQUIRE(profiles.size() == 2);
    CHECK(profiles[0].entropy_bits == 0.0);
    CHECK(std::fabs(profiles[1].entropy_bits - 4.0) <= 1e-12);
    CHECK(profiles[1].type_count == 16);
    CHECK(profiles[1].plaw_exponent == doctest::Approx(0.0)); // uniform: flat rank curve
    CHECK(profiles[1].tokens == 16);
}

TEST_CASE("profiles are invariant to sentence order and duplication") {
    std::mt19937_64 rng(55);
    LengthBin bin;
    bin.length = 5;
    Lexicon lex;
    for (int i = 0; i < 300; ++i) {
        Sentence s;
        for (int p = 0; p < 5; ++p) {
            const std::string w = "w" + std::to_string(rng() % 30);
            s.tokens.push_back(Token{w, w});
            ++lex.freq[w];
            ++lex.total_tokens;
        }
        bin.sentences.push_back(std::move(s));
    }
    const auto classes = classify_frequency(lex, 2, 2);
    const auto base = profile_bin(bin, lex, classes);

    LengthBin shuffled = bin;
    std::shuffle(shuffled.sentences.begin(), shuffled.sentences.end(), rng);
    const auto reordered = profile_bin(shuffled, lex, classes);
    REQUIRE(reordered.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(reordered[i].entropy_bits == base[i].entropy_bits); // bit-identical
        CHECK(reordered[i].mean_word_freq == base[i].mean_word_freq);
        CHECK(reordered[i].prop_high == base[i].prop_high);
    }

    LengthBin doubled = bin;
    for (const Sentence& s : bin.sentences) doubled.sentences.push_back(s);
    const auto twice = profile_bin(doubled, lex, classes);
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(twice[i].entropy_bits == doctest::Approx(base[i].entropy_bits).epsilon(1e-12));
        CHECK(twice[i].mean_word_len == doctest::Approx(base[i].mean_word_len).epsilon(1e-12));
        CHECK(twice[i].mean_word_freq == doctest::Approx(base[i].mean_word_freq).epsilon(1e-12));
        CHECK(twice[i].prop_low == doctest::Approx(base[i].prop_low).epsilon(1e-12));
        CHECK(twice[i].type_count == base[i].type_count);
        CHECK(twice[i].tokens == 2 * base[i].tokens);
    }
}

TEST_CASE("relabeling words preserves class proportions") {
    FrequencyClassMap classes;
    classes.class_of = {{"alpha", FrequencyClass::High},
                        {"beta", FrequencyClass::Medium},
                        {"zeta", FrequencyClass::High},
                        {"omega", FrequencyClass::Medium}};
    const auto before = class_proportions(cell_of({{"alpha", 3}, {"beta", 2}}), classes);
    const auto after = class_proportions(cell_of({{"zeta", 3}, {"omega", 2}}), classes);
    CHECK(before.high == after.high);
    CHECK(before.medium == after.medium);
    CHECK(before.low == after.low);
}
