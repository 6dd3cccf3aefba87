#include "posent/errors.hpp"
#include "posent/report.hpp"
#include "posent/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace posent;

MedialWindowSpec parse_medial(const std::string& text) {
    if (text == "paper") return {WindowMode::PaperConsistent, 0, 0};
    if (text == "strict") return {WindowMode::StrictText, 0, 0};
    if (text.rfind("custom:", 0) == 0) {
        const auto second = text.find(':', 7);
        if (second != std::string::npos) {
            try {
                const int lo = std::stoi(text.substr(7, second - 7));
                const int hi = std::stoi(text.substr(second + 1));
                return {WindowMode::Custom, lo, hi};
            } catch (const std::exception&) {
            }
        }
    }
    throw config_error("--medial expects paper, strict or custom:LO:HI, got '" + text + "'");
}

void parse_emit(const std::string& text, RunConfig& cfg) {
    cfg.emit_csv_files = cfg.emit_json_file = cfg.emit_svg_files = false;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "csv") cfg.emit_csv_files = true;
        else if (item == "json") cfg.emit_json_file = true;
        else if (item == "svg") cfg.emit_svg_files = true;
        else if (!item.empty())
            throw config_error("--emit expects a subset of csv,json,svg, got '" + item + "'");
    }
}

std::vector<PositionSpec> specs_from_json_file(const std::string& path, int length) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open spec file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw data_error("bad spec JSON in '" + path + "': " + e.what());
    }
    if (!j.is_array()) throw data_error("spec JSON must be an array of position objects");
    std::vector<PositionSpec> specs(length);
    std::vector<bool> filled(length, false);
    for (const auto& entry : j) {
        const int pos = entry.at("position").get<int>();
        if (pos < 1 || pos > length)
            throw data_error("spec position " + std::to_string(pos) + " outside 1.." +
                             std::to_string(length));
        PositionSpec spec;
        spec.position = pos;
        for (const auto& [word, prob] : entry.at("distribution").items())
            spec.distribution.emplace_back(word, prob.get<double>());
        specs[pos - 1] = std::move(spec);
        filled[pos - 1] = true;
    }
    for (int p = 0; p < length; ++p)
        if (!filled[p]) throw data_error("spec missing position " + std::to_string(p + 1));
    return specs;
}

int run(int argc, char** argv) {
    CLI::App app{"positional entropy and frequency-structure corpus profiler"};
    app.require_subcommand(1);

    // profile
    auto* profile = app.add_subcommand("profile", "profile a corpus into per-position statistics");
    RunConfig cfg;
    std::string format_name = "lines";
    std::string medial_name = "paper";
    std::string emit_list = "csv,json";
    std::string estimator_name = "mle";
    profile->add_option("--input", cfg.inputs, "input corpus file(s)")->required()->expected(-1);
    profile->add_option("--format", format_name, "input format")->check(CLI::IsMember({"lines", "plain"}));
    profile->add_option("--min-len", cfg.min_len, "shortest sentence length kept");
    profile->add_option("--max-len", cfg.max_len, "longest sentence length kept");
    profile->add_option("--high-cutoff", cfg.high_cutoff, "distinct-frequency ranks classed High");
    profile->add_option("--low-cutoff", cfg.low_cutoff, "distinct-frequency ranks classed Low");
    profile->add_flag("--lowercase,!--no-lowercase", cfg.lowercase, "fold case when normalizing");
    profile->add_flag("--dedup", cfg.dedup, "count identical sentences once");
    profile->add_option("--estimator", estimator_name, "entropy estimator")
        ->check(CLI::IsMember({"mle", "miller-madow"}));
    profile->add_option("--medial", medial_name, "medial window: paper|strict|custom:LO:HI");
    profile->add_option("--emit", emit_list, "comma-separated outputs: csv,json,svg");
    profile->add_option("--out", cfg.out_dir, "output directory")->required();
    profile->add_option("--workers", cfg.workers, "worker threads for per-bin profiling");
    profile->add_option("--min-bin", cfg.min_sentences_per_bin, "minimum sentences for a bin to be profiled");

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus with known per-position distributions");
    int s_length = 15;
    std::uint64_t s_sentences = 1000, s_seed = 1;
    std::string s_out, s_spec_file, s_preset = "uniform";
    int s_types = 16, s_initial = 2, s_medial = 256, s_final = 1024;
    synth->add_option("--length", s_length, "sentence length")->required();
    synth->add_option("--sentences", s_sentences, "number of sentences")->required();
    synth->add_option("--seed", s_seed, "generator seed");
    synth->add_option("--out", s_out, "output corpus file (lines format)")->required();
    synth->add_option("--spec", s_spec_file, "JSON file with per-position distributions");
    synth->add_option("--preset", s_preset, "built-in spec shape")
        ->check(CLI::IsMember({"uniform", "zipf", "staircase"}));
    synth->add_option("--types", s_types, "vocabulary size for uniform/zipf presets");
    synth->add_option("--initial-types", s_initial, "staircase: initial-position vocabulary");
    synth->add_option("--medial-types", s_medial, "staircase: medial-position vocabulary");
    synth->add_option("--final-types", s_final, "staircase: final-position vocabulary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (profile->parsed()) {
        cfg.format = format_name == "plain" ? InputFormat::Plain : InputFormat::Lines;
        cfg.estimator = estimator_name == "miller-madow" ? EntropyEstimator::MillerMadow
                                                         : EntropyEstimator::Mle;
        cfg.medial = parse_medial(medial_name);
        parse_emit(emit_list, cfg);
        const RunReport report = run_profile(cfg);
        std::cout << "profiled " << report.bins.size() << " length bin(s), "
                  << report.lexicon.total_tokens << " tokens, " << report.lexicon.total_types()
                  << " types -> " << cfg.out_dir << "\n";
        return 0;
    }

    std::vector<PositionSpec> specs;
    if (!s_spec_file.empty()) specs = specs_from_json_file(s_spec_file, s_length);
    else if (s_preset == "uniform") specs = uniform_specs(s_length, s_types);
    else if (s_preset == "zipf") specs = zipf_specs(s_length, s_types);
    else specs = staircase_specs(s_length, s_initial, s_medial, s_final);

    const LengthBin bin = generate_positional_corpus(s_length, specs, s_sentences, s_seed);
    std::ofstream out(s_out, std::ios::binary);
    if (!out) throw io_error("cannot open '" + s_out + "' for writing");
    write_lines(bin, out);
    out.flush();
    if (!out) throw io_error("write failed on '" + s_out + "'");
    std::cout << "wrote " << s_sentences << " sentences of length " << s_length << " to " << s_out
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
