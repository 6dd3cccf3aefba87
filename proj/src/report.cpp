#include "posent/report.hpp"
#include "posent/errors.hpp"
#include "posent/svg.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

namespace posent {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    const std::string path = (fs::path(dir) / name).string();
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw io_error("cannot open '" + path + "' for writing");
    const std::size_t n = std::fwrite(content.data(), 1, content.size(), f);
    const bool bad = n != content.size();
    if (std::fclose(f) != 0 || bad) throw io_error("write failed on '" + path + "'");
}

void check_inputs_readable(const RunConfig& cfg) {
    if (cfg.inputs.empty()) throw config_error("no input files given");
    for (const std::string& path : cfg.inputs) {
        std::FILE* f = std::fopen(path.c_str(), "rb");
        if (!f) throw io_error("cannot open '" + path + "' for reading");
        std::fclose(f);
    }
}

void check_out_dir_writable(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory '" + dir + "': " + ec.message());
    const std::string probe = (fs::path(dir) / ".write_probe").string();
    std::FILE* f = std::fopen(probe.c_str(), "wb");
    if (!f) throw io_error("output directory '" + dir + "' is not writable");
    std::fclose(f);
    fs::remove(probe, ec);
}

const char* estimator_name(EntropyEstimator e) {
    return e == EntropyEstimator::Mle ? "mle" : "miller_madow";
}

struct MedialStatistic {
    const char* name;
    double (*get)(const PositionProfile&);
};

constexpr MedialStatistic kMedialStatistics[] = {
    {"entropy_bits", [](const PositionProfile& p) { return p.entropy_bits; }},
    {"types", [](const PositionProfile& p) { return static_cast<double>(p.type_count); }},
    {"mean_word_len", [](const PositionProfile& p) { return p.mean_word_len; }},
    {"mean_word_freq", [](const PositionProfile& p) { return p.mean_word_freq; }},
    {"prop_high", [](const PositionProfile& p) { return p.prop_high; }},
    {"prop_medium", [](const PositionProfile& p) { return p.prop_medium; }},
    {"prop_low", [](const PositionProfile& p) { return p.prop_low; }},
};

BinReport make_bin_report(const LengthBin& bin, const Lexicon& lex, const FrequencyClassMap& classes,
                          const RunConfig& cfg) {
    BinReport report;
    report.length = bin.length;
    report.sentence_count = bin.sentences.size();
    report.profiles = profile_bin(bin, lex, classes, cfg.estimator);

    std::vector<int> window;
    try {
        window = medial_window(bin.length, cfg.medial);
    } catch (const config_error&) {
        return report; // bin too short for the configured window
    }
    report.window_n = static_cast<int>(window.size());

    if (report.window_n >= 4) {
        Eigen::VectorXd xs(report.window_n);
        for (int i = 0; i < report.window_n; ++i) xs[i] = window[i];
        for (const MedialStatistic& stat : kMedialStatistics) {
            Eigen::VectorXd ys(report.window_n);
            for (int i = 0; i < report.window_n; ++i) ys[i] = stat.get(report.profiles[window[i] - 1]);
            try {
                report.medial_tests.push_back(regression_f_test(stat.name, xs, ys));
            } catch (const data_error&) {
                // constant series over the window: no slope to test
            }
        }
    }

    std::uint64_t k_inc = 0, k_dec = 0;
    for (const WordTrend& t : per_word_trends(bin, window)) {
        if (t.sign == TrendSign::Increasing) ++k_inc;
        else if (t.sign == TrendSign::Decreasing) ++k_dec;
    }
    if (k_inc + k_dec >= 10) report.trend = proportion_half_test(k_inc, k_dec);
    return report;
}

json spectrum_fit_json(const RunReport& report) {
    json j;
    j["available"] = report.spectrum_fit_available;
    if (!report.spectrum_fit_available) return j;
    const PowerLawFit& fit = report.spectrum_fit;
    j["a"] = fit.a;
    j["b"] = fit.b;
    j["c"] = fit.c;
    j["adj_r2"] = fit.adj_r2;
    j["ss_res"] = fit.ss_res;
    j["n_points"] = fit.n_points;
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    const char* names[3] = {"a", "b", "c"};
    json ci;
    for (int i = 0; i < 3; ++i) {
        if (fit.ci95[i].valid) ci[names[i]] = {fit.ci95[i].low, fit.ci95[i].high};
        else ci[names[i]] = nullptr;
    }
    j["ci95"] = ci;
    if (!fit.diagnostics.empty()) j["diagnostics"] = fit.diagnostics;
    return j;
}

} // namespace

RunReport run_profile(const RunConfig& config) {
    if (config.workers < 1) throw config_error("workers must be >= 1");
    check_inputs_readable(config);
    if (!config.out_dir.empty()) check_out_dir_writable(config.out_dir);

    LengthBinner binner(config.min_len, config.max_len, config.dedup);
    const TokenizeConfig tok_cfg{config.lowercase};
    for (const std::string& path : config.inputs) {
        const std::string text = read_file(path);
        for (std::string_view span : segment_sentences(text, config.format)) {
            Sentence s;
            s.tokens = tokenize(span, tok_cfg);
            if (!s.tokens.empty()) binner.add(std::move(s));
        }
    }
    BinningResult binned = binner.take();

    RunReport report;
    report.config = config;
    report.sentences = {binned.sentences_seen, binned.tokens_seen,
                        binned.sentences_kept,  binned.distinct_in_range,
                        binned.sentences_out_of_range, binned.duplicates_dropped};

    report.lexicon = build_lexicon(binned.bins);
    report.classes = classify_frequency(report.lexicon, config.high_cutoff, config.low_cutoff);

    const auto spectrum = frequency_spectrum(report.lexicon);
    report.distinct_frequency_values = spectrum.size();
    if (spectrum.size() >= 4) {
        Eigen::VectorXd ps(spectrum.size()), ss(spectrum.size());
        for (std::size_t i = 0; i < spectrum.size(); ++i) {
            ps[i] = static_cast<double>(spectrum[i].frequency);
            ss[i] = static_cast<double>(spectrum[i].type_count);
        }
        report.spectrum_fit = fit_power_law_offset(ps, ss);
        report.spectrum_fit_available = true;
    }

    std::vector<const LengthBin*> qualifying;
    for (const auto& [len, bin] : binned.bins)
        if (bin.sentences.size() >= config.min_sentences_per_bin) qualifying.push_back(&bin);
    if (qualifying.empty())
        throw data_error("no length bin reaches min_sentences_per_bin = " +
                         std::to_string(config.min_sentences_per_bin));

    report.bins.resize(qualifying.size());
    const int workers = std::min<int>(config.workers, static_cast<int>(qualifying.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < qualifying.size(); ++i)
            report.bins[i] = make_bin_report(*qualifying[i], report.lexicon, report.classes, config);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto work = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= qualifying.size()) return;
                try {
                    report.bins[i] =
                        make_bin_report(*qualifying[i], report.lexicon, report.classes, config);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    if (!config.out_dir.empty()) {
        if (config.emit_csv_files) emit_csv(report, config.out_dir);
        if (config.emit_json_file) emit_summary_json(report, config.out_dir);
        if (config.emit_svg_files) emit_svg(report, config.out_dir);
    }
    return report;
}

void emit_csv(const RunReport& report, const std::string& dir) {
    std::string profiles =
        "length,position,tokens,types,entropy_bits,mean_word_len,mean_word_freq,"
        "prop_high,prop_medium,prop_low,plaw_exponent,plaw_r2\n";
    for (const BinReport& bin : report.bins) {
        for (const PositionProfile& p : bin.profiles) {
            profiles += std::to_string(p.length) + ',' + std::to_string(p.position) + ',' +
                        std::to_string(p.tokens) + ',' + std::to_string(p.type_count) + ',' +
                        fmt6(p.entropy_bits) + ',' + fmt6(p.mean_word_len) + ',' +
                        fmt6(p.mean_word_freq) + ',' + fmt6(p.prop_high) + ',' +
                        fmt6(p.prop_medium) + ',' + fmt6(p.prop_low) + ',' +
                        fmt6(p.plaw_exponent) + ',' + fmt6(p.plaw_r2) + '\n';
        }
    }
    write_file(dir, "profiles.csv", profiles);

    const std::string mode = report.config.medial.label();
    std::string medial = "length,statistic,n,r,F,p,window_mode\n";
    for (const BinReport& bin : report.bins) {
        for (const MedialTestResult& t : bin.medial_tests) {
            medial += std::to_string(bin.length) + ',' + t.statistic_name + ',' +
                      std::to_string(t.n) + ',' + fmt6(t.r) + ',' + fmt6(t.F) + ',' + fmt6(t.p) +
                      ',' + mode + '\n';
        }
    }
    write_file(dir, "medial_tests.csv", medial);

    std::string trends = "length,n_classified,k_increasing,k_decreasing,statistic,p\n";
    for (const BinReport& bin : report.bins) {
        if (!bin.trend) continue;
        const ProportionTestResult& t = *bin.trend;
        trends += std::to_string(bin.length) + ',' +
                  std::to_string(t.k_increasing + t.k_decreasing) + ',' +
                  std::to_string(t.k_increasing) + ',' + std::to_string(t.k_decreasing) + ',' +
                  fmt6(t.statistic) + ',' + fmt6(t.p) + '\n';
    }
    write_file(dir, "trend_tests.csv", trends);

    std::ostringstream lex_csv;
    export_lexicon_csv(report.lexicon, report.classes, lex_csv);
    write_file(dir, "lexicon.csv", lex_csv.str());
}

void emit_summary_json(const RunReport& report, const std::string& dir) {
    const RunConfig& cfg = report.config;
    json j;
    json config_echo;
    config_echo["inputs"] = cfg.inputs;
    config_echo["format"] = cfg.format == InputFormat::Lines ? "lines" : "plain";
    config_echo["lowercase"] = cfg.lowercase;
    config_echo["dedup"] = cfg.dedup;
    config_echo["min_len"] = cfg.min_len;
    config_echo["max_len"] = cfg.max_len;
    config_echo["high_cutoff"] = cfg.high_cutoff;
    config_echo["low_cutoff"] = cfg.low_cutoff;
    config_echo["estimator"] = estimator_name(cfg.estimator);
    config_echo["medial"] = cfg.medial.label();
    // out_dir and workers are execution knobs, not analysis settings; echoing
    // them would break byte-identity across worker counts
    config_echo["min_sentences_per_bin"] = cfg.min_sentences_per_bin;
    json emit = json::array();
    if (cfg.emit_csv_files) emit.push_back("csv");
    if (cfg.emit_json_file) emit.push_back("json");
    if (cfg.emit_svg_files) emit.push_back("svg");
    config_echo["emit"] = emit;
    j["config"] = config_echo;

    j["sentences"] = {{"seen", report.sentences.seen},
                      {"tokens_seen", report.sentences.tokens_seen},
                      {"in_range", report.sentences.in_range},
                      {"distinct_in_range", report.sentences.distinct_in_range},
                      {"out_of_range", report.sentences.out_of_range},
                      {"duplicates_dropped", report.sentences.duplicates_dropped}};
    j["lexicon"] = {{"total_tokens", report.lexicon.total_tokens},
                    {"total_types", report.lexicon.total_types()},
                    {"distinct_frequency_values", report.distinct_frequency_values}};
    j["spectrum_fit"] = spectrum_fit_json(report);
    j["medial"] = {{"window_mode", cfg.medial.label()}};
    j["per_position_power_law_model"] = "loglog_two_param";
    json bins = json::array();
    for (const BinReport& bin : report.bins)
        bins.push_back({{"length", bin.length},
                        {"sentences", bin.sentence_count},
                        {"window_n", bin.window_n}});
    j["bins"] = bins;

    write_file(dir, "summary.json", j.dump(2) + "\n");
}

void emit_svg(const RunReport& report, const std::string& dir) {
    for (const BinReport& bin : report.bins) {
        const std::string suffix = "_L" + std::to_string(bin.length) + ".svg";
        std::vector<double> xs;
        std::vector<double> entropy, freq, high, medium, low;
        for (const PositionProfile& p : bin.profiles) {
            xs.push_back(p.position);
            entropy.push_back(p.entropy_bits);
            freq.push_back(p.mean_word_freq);
            high.push_back(p.prop_high);
            medium.push_back(p.prop_medium);
            low.push_back(p.prop_low);
        }
        write_file(dir, "entropy" + suffix,
                   line_chart_svg("Positional entropy, sentence length " + std::to_string(bin.length),
                                  "position", "entropy (bits)", {{"H(X)", xs, entropy}}));
        write_file(dir, "mean_freq" + suffix,
                   line_chart_svg("Mean word frequency, sentence length " + std::to_string(bin.length),
                                  "position", "mean corpus frequency", {{"mean freq", xs, freq}}));
        write_file(dir, "class_props" + suffix,
                   stacked_chart_svg("Frequency-class proportions, sentence length " +
                                         std::to_string(bin.length),
                                     "position", xs,
                                     {{"high", high}, {"medium", medium}, {"low", low}}));
    }
}

RunConfig config_from_summary_json(const std::string& json_text) {
    const json j = json::parse(json_text);
    const json& c = j.at("config");
    RunConfig cfg;
    cfg.inputs = c.at("inputs").get<std::vector<std::string>>();
    cfg.format = c.at("format").get<std::string>() == "plain" ? InputFormat::Plain : InputFormat::Lines;
    cfg.lowercase = c.at("lowercase").get<bool>();
    cfg.dedup = c.at("dedup").get<bool>();
    cfg.min_len = c.at("min_len").get<int>();
    cfg.max_len = c.at("max_len").get<int>();
    cfg.high_cutoff = c.at("high_cutoff").get<int>();
    cfg.low_cutoff = c.at("low_cutoff").get<int>();
    cfg.estimator = c.at("estimator").get<std::string>() == "miller_madow"
                        ? EntropyEstimator::MillerMadow
                        : EntropyEstimator::Mle;
    const std::string medial = c.at("medial").get<std::string>();
    if (medial == "paper") cfg.medial = {WindowMode::PaperConsistent, 0, 0};
    else if (medial == "strict") cfg.medial = {WindowMode::StrictText, 0, 0};
    else {
        // custom:LO:HI
        const auto first = medial.find(':');
        const auto second = medial.find(':', first + 1);
        cfg.medial = {WindowMode::Custom, std::stoi(medial.substr(first + 1, second - first - 1)),
                      std::stoi(medial.substr(second + 1))};
    }
    cfg.min_sentences_per_bin = c.at("min_sentences_per_bin").get<std::uint64_t>();
    cfg.emit_csv_files = false;
    cfg.emit_json_file = false;
    cfg.emit_svg_files = false;
    for (const auto& e : c.at("emit")) {
        const std::string kind = e.get<std::string>();
        if (kind == "csv") cfg.emit_csv_files = true;
        else if (kind == "json") cfg.emit_json_file = true;
        else if (kind == "svg") cfg.emit_svg_files = true;
    }
    return cfg;
}

} // namespace posent
