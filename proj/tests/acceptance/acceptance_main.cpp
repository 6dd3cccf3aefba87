// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include "posent/errors.hpp"
#include "posent/positional.hpp"
#include "posent/powerlaw.hpp"
#include "posent/report.hpp"
#include "posent/stats.hpp"
#include "posent/synth.hpp"

#include "../oracles.hpp"
#include "doc_corpus.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace posent;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

void fail(Outcome& out, const std::string& why) {
    out.pass = false;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += why;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// 1. The three reference (r, n) -> (F, p) triples.
Outcome criterion_triples() {
    Outcome out;
    struct Row {
        double r;
        int n;
        double F, tol_f, p, tol_p;
    };
    const Row rows[] = {
        {0.4770, 10, 2.3569, 0.005, 0.1633, 0.001},
        {-0.0607, 25, 0.0851, 0.0005, 0.7731, 0.001},
        {-0.0606, 40, 0.1399, 0.0005, 0.7104, 0.001},
    };
    for (const Row& row : rows) {
        const auto t = f_test_from_correlation("H", row.r, row.n);
        if (std::fabs(t.F - row.F) > row.tol_f)
            fail(out, "F(" + num(row.r) + "," + std::to_string(row.n) + ") = " + num(t.F) +
                          " vs " + num(row.F));
        if (std::fabs(t.p - row.p) > row.tol_p)
            fail(out, "p(" + num(row.r) + "," + std::to_string(row.n) + ") = " + num(t.p) +
                          " vs " + num(row.p));
    }
    if (out.pass) out.detail = "all three triples within tolerance";
    return out;
}

// 2. F CDF against the quadrature oracle.
Outcome criterion_f_cdf() {
    Outcome out;
    double worst = 0;
    for (int d1 : {1, 2, 5}) {
        for (int d2 : {1, 8, 23, 38, 100}) {
            for (int k = 0; k < 50; ++k) {
                const double x = 20.0 * k / 49.0;
                const double got = f_cdf(x, d1, d2);
                const double want = oracle::f_cdf_quadrature(x, d1, d2);
                worst = std::max(worst, std::fabs(got - want));
            }
        }
    }
    if (worst > 1e-8) fail(out, "max |f_cdf - oracle| = " + num(worst));
    const double median_err = std::fabs(f_cdf(1.0, 1, 1) - 0.5);
    if (median_err > 1e-10) fail(out, "f_cdf(1,1,1) off median by " + num(median_err));
    if (out.pass)
        out.detail = "750-point grid max error " + num(worst) + ", F(1,1) median exact";
    return out;
}

// 3. Entropy: exact powers of two, then estimated corpora with known marginals.
Outcome criterion_entropy() {
    Outcome out;
    for (int k = 0; k <= 10; ++k) {
        PositionCounts pc;
        for (int i = 0; i < (1 << k); ++i) {
            pc.counts.emplace("w" + std::to_string(i), 2);
            pc.tokens += 2;
        }
        const double h = positional_entropy(pc);
        if (std::fabs(h - k) > 1e-12)
            fail(out, "uniform 2^" + std::to_string(k) + " gave " + num(h));
    }
    const auto check_corpus = [&](const std::vector<PositionSpec>& specs, std::uint64_t seed,
                                  const std::string& name) {
        const int L = static_cast<int>(specs.size());
        const auto bin = generate_positional_corpus(L, specs, 100000, seed);
        const auto cells = position_counts(bin);
        for (int p = 0; p < L; ++p) {
            double truth = 0;
            for (const auto& [w, prob] : specs[p].distribution) truth -= prob * std::log2(prob);
            const double est = positional_entropy(cells[p]);
            if (std::fabs(est - truth) > 0.05)
                fail(out, name + " pos " + std::to_string(p + 1) + ": |" + num(est) + " - " +
                              num(truth) + "| > 0.05");
        }
    };
    check_corpus(uniform_specs(3, 16), 101, "uniform16");
    check_corpus(uniform_specs(3, 64), 102, "uniform64");
    check_corpus(zipf_specs(3, 64), 103, "zipf64");
    if (out.pass) out.detail = "2^k exact for k=0..10; estimates within 0.05 bits at n=100k";
    return out;
}

// 4. Fitter recovery, noise robustness and Monte-Carlo interval coverage.
Outcome criterion_fitter() {
    Outcome out;
    Eigen::VectorXd x(50);
    for (int i = 0; i < 50; ++i) x[i] = i + 1;
    const Eigen::VectorXd clean = (5.0 * x.array().pow(-2.0) + 1.0).matrix();
    const double truth[3] = {5.0, -2.0, 1.0};

    const PowerLawFit exact = fit_power_law_offset(x, clean);
    const double rel_a = std::fabs(exact.a - 5.0) / 5.0;
    const double rel_b = std::fabs(exact.b + 2.0) / 2.0;
    const double rel_c = std::fabs(exact.c - 1.0) / 1.0;
    if (rel_a > 1e-6 || rel_b > 1e-6 || rel_c > 1e-6)
        fail(out, "noiseless recovery rel err (" + num(rel_a) + "," + num(rel_b) + "," +
                      num(rel_c) + ")");

    // 500 draws of 1% multiplicative noise: every draw within 5%
    std::mt19937_64 rng_mult(424242);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst_rel = 0;
    for (int draw = 0; draw < 500; ++draw) {
        Eigen::VectorXd y(50);
        for (int i = 0; i < 50; ++i) y[i] = clean[i] * (1.0 + 0.01 * gauss(rng_mult));
        const PowerLawFit fit = fit_power_law_offset(x, y);
        const double params[3] = {fit.a, fit.b, fit.c};
        for (int j = 0; j < 3; ++j)
            worst_rel = std::max(worst_rel, std::fabs(params[j] - truth[j]) / std::fabs(truth[j]));
    }
    if (worst_rel > 0.05) fail(out, "multiplicative-noise worst rel err " + num(worst_rel));

    // coverage oracle: homoscedastic noise at 1% of the mean signal level,
    // the model under which the linearized t-interval asserts 95%
    std::mt19937_64 rng_cov(777777);
    const double sigma = 0.01 * clean.mean();
    int covered[3] = {0, 0, 0};
    for (int draw = 0; draw < 500; ++draw) {
        Eigen::VectorXd y(50);
        for (int i = 0; i < 50; ++i) y[i] = clean[i] + sigma * gauss(rng_cov);
        const PowerLawFit fit = fit_power_law_offset(x, y);
        for (int j = 0; j < 3; ++j) {
            if (!fit.ci95[j].valid) continue;
            if (fit.ci95[j].low <= truth[j] && truth[j] <= fit.ci95[j].high) ++covered[j];
        }
    }
    std::string cov_detail;
    for (int j = 0; j < 3; ++j) {
        const double rate = covered[j] / 500.0;
        cov_detail += (j ? "/" : "") + num(rate);
        if (rate < 0.92 || rate > 0.98)
            fail(out, std::string("coverage of parameter ") + "abc"[j] + " = " + num(rate));
    }
    if (out.pass)
        out.detail = "noiseless exact, noisy worst rel err " + num(worst_rel) + ", coverage " +
                     cov_detail;
    return out;
}

// 5. Staircase orderings on a real English corpus of at least 1M tokens.
Outcome criterion_real_corpus() {
    Outcome out;
    const bool supplied = std::getenv("POSENT_CORPUS") != nullptr;
    const std::string corpus = acceptance::resolve_corpus("posent_acceptance_corpus.txt",
                                                          20ull * 1024 * 1024);
    if (corpus.empty()) {
        fail(out, "no corpus: set POSENT_CORPUS or install documentation sources");
        return out;
    }
    RunConfig cfg;
    cfg.inputs = {corpus};
    cfg.format = InputFormat::Plain;
    cfg.dedup = true; // documentation text repeats boilerplate sentences verbatim
    cfg.min_sentences_per_bin = 1000;
    cfg.workers = 2;
    const fs::path out_dir = fs::temp_directory_path() / "posent_acceptance_real";
    fs::remove_all(out_dir);
    cfg.out_dir = out_dir.string();

    const auto started = std::chrono::steady_clock::now();
    RunReport report;
    try {
        report = run_profile(cfg);
    } catch (const std::exception& e) {
        fail(out, std::string("pipeline error: ") + e.what());
        return out;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    const double tokens = static_cast<double>(report.sentences.tokens_seen);
    if (tokens < 1e6) {
        fail(out, "only " + num(tokens) + " corpus tokens (need 1e6)");
        return out;
    }
    const double budget = 300.0 * std::max(1.0, tokens / 1e6);
    if (seconds > budget)
        fail(out, "took " + num(seconds) + "s > " + num(budget) + "s");

    int checked = 0, orderings = 0, violations = 0;
    for (const BinReport& bin : report.bins) {
        if (bin.sentence_count < 1000) continue;
        ++checked;
        const auto& prof = bin.profiles;
        const int L = bin.length;
        double h_med = 0, f_med = 0, lm_med = 0;
        for (int p = 2; p <= L - 1; ++p) {
            h_med += prof[p - 1].entropy_bits;
            f_med += prof[p - 1].mean_word_freq;
            lm_med += prof[p - 1].prop_low + prof[p - 1].prop_medium;
        }
        h_med /= (L - 2);
        f_med /= (L - 2);
        lm_med /= (L - 2);
        const auto& first = prof.front();
        const auto& last = prof.back();
        orderings += 3;
        if (!(first.entropy_bits < h_med && h_med < last.entropy_bits)) {
            ++violations;
            fail(out, "L=" + std::to_string(L) + " entropy ordering " + num(first.entropy_bits) +
                          " / " + num(h_med) + " / " + num(last.entropy_bits));
        }
        if (!(first.mean_word_freq > f_med && f_med > last.mean_word_freq)) {
            ++violations;
            fail(out, "L=" + std::to_string(L) + " frequency ordering " +
                          num(first.mean_word_freq) + " / " + num(f_med) + " / " +
                          num(last.mean_word_freq));
        }
        if (!(last.prop_low + last.prop_medium > lm_med)) {
            ++violations;
            fail(out, "L=" + std::to_string(L) + " final low+medium " +
                          num(last.prop_low + last.prop_medium) + " <= medial " + num(lm_med));
        }
    }
    if (checked == 0) fail(out, "no bin reached 1000 sentences");

    const std::string evidence = std::to_string(orderings - violations) + "/" +
                                 std::to_string(orderings) + " orderings over " +
                                 std::to_string(checked) + " bins, " + num(tokens) +
                                 " corpus tokens (" +
                                 num(static_cast<double>(report.lexicon.total_tokens)) +
                                 " in bins), " + num(seconds) + "s";
    if (!supplied) {
        // the claim is about natural English; documentation text only stands
        // in for it, so without a user-supplied corpus the criterion cannot
        // be declared met
        const std::string verdict = out.pass ? "all orderings hold on it" : out.detail;
        out.pass = false;
        out.detail = "no public-domain corpus supplied (set POSENT_CORPUS); "
                     "documentation-register fallback gives " + evidence + "; " + verdict;
    } else if (out.pass) {
        out.detail = evidence;
    } else {
        out.detail = "[" + evidence + "] " + out.detail;
    }
    return out;
}

// 6. Null staircase: shared medial distribution must not produce slopes.
Outcome criterion_null_staircase() {
    Outcome out;
    const auto specs = staircase_specs(15, 2, 64, 512);
    const auto window = medial_window(15, {WindowMode::PaperConsistent, 0, 0});
    int quiet = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto bin = generate_positional_corpus(15, specs, 10000, seed);
        const auto cells = position_counts(bin);
        Eigen::VectorXd xs(window.size()), ys(window.size());
        for (std::size_t i = 0; i < window.size(); ++i) {
            xs[i] = window[i];
            ys[i] = positional_entropy(cells[window[i] - 1]);
        }
        if (regression_f_test("entropy_bits", xs, ys).p > 0.05) ++quiet;
    }
    if (quiet < 18) fail(out, "p > 0.05 in only " + std::to_string(quiet) + "/20 runs");
    else out.detail = "p > 0.05 in " + std::to_string(quiet) + "/20 seeded runs";
    return out;
}

// 7. Byte-identical outputs across worker counts.
Outcome criterion_determinism() {
    Outcome out;
    const fs::path work = fs::temp_directory_path() / "posent_acceptance_det";
    fs::remove_all(work);
    fs::create_directories(work);
    const fs::path corpus = work / "corpus.txt";
    {
        std::ofstream f(corpus, std::ios::binary);
        write_lines(generate_positional_corpus(9, zipf_specs(9, 32), 600, 21), f);
        write_lines(generate_positional_corpus(12, zipf_specs(12, 48), 600, 22), f);
        write_lines(generate_positional_corpus(15, staircase_specs(15, 2, 64, 256), 800, 23), f);
    }
    RunConfig cfg;
    cfg.inputs = {corpus.string()};
    cfg.high_cutoff = 4;
    cfg.low_cutoff = 4;
    cfg.emit_svg_files = true;
    int compared = 0;
    try {
        cfg.workers = 1;
        cfg.out_dir = (work / "w1").string();
        run_profile(cfg);
        cfg.workers = 8;
        cfg.out_dir = (work / "w8").string();
        run_profile(cfg);
        for (const auto& entry : fs::directory_iterator(work / "w1")) {
            const fs::path name = entry.path().filename();
            std::ifstream a(entry.path(), std::ios::binary), b(work / "w8" / name, std::ios::binary);
            std::ostringstream sa, sb;
            sa << a.rdbuf();
            sb << b.rdbuf();
            ++compared;
            if (sa.str() != sb.str()) fail(out, name.string() + " differs between worker counts");
        }
    } catch (const std::exception& e) {
        fail(out, std::string("pipeline error: ") + e.what());
    }
    if (compared == 0) fail(out, "no output files compared");
    if (out.pass) out.detail = std::to_string(compared) + " files byte-identical (workers 1 vs 8)";
    return out;
}

} // namespace

int main() {
    struct Entry {
        int id;
        const char* title;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {1, "statistical-triple reproduction", criterion_triples},
        {2, "F-distribution CDF accuracy", criterion_f_cdf},
        {3, "entropy correctness", criterion_entropy},
        {4, "fitter recovery and CI coverage", criterion_fitter},
        {5, "qualitative staircase on real English", criterion_real_corpus},
        {6, "null-staircase sanity", criterion_null_staircase},
        {7, "cross-worker determinism", criterion_determinism},
    };
    int failures = 0;
    for (const Entry& entry : entries) {
        Outcome out;
        try {
            out = entry.fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("unexpected exception: ") + e.what();
        }
        if (!out.pass) ++failures;
        std::printf("criterion %d: %s - %s (%s)\n", entry.id, out.pass ? "PASS" : "FAIL",
                    entry.title, out.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
