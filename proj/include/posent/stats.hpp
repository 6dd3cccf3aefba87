#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace posent {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation,
// absolute error well below 1e-10 over the tested domain.
double regularized_incomplete_beta(double a, double b, double x);

// F(d1, d2) distribution CDF via I_{d1 x / (d1 x + d2)}(d1/2, d2/2).
double f_cdf(double x, int d1, int d2);

// Student t CDF / upper quantile (the quantile solves the CDF by bisection).
double student_t_cdf(double t, int df);
double student_t_quantile(double prob, int df);

// Exact chi-squared CDF with one degree of freedom: erf(sqrt(x/2)).
double chi_squared_cdf_1df(double x);

// Sample Pearson correlation. Requires equal lengths, n >= 3 and nonzero
// variance in both series; throws data_error("degenerate series") otherwise.
double pearson_r(const Eigen::Ref<const Eigen::VectorXd>& xs,
                 const Eigen::Ref<const Eigen::VectorXd>& ys);

enum class WindowMode { PaperConsistent, StrictText, Custom };

struct MedialWindowSpec {
    WindowMode mode = WindowMode::PaperConsistent;
    int lo = 0; // custom bounds, inclusive
    int hi = 0;
    std::string label() const; // "paper", "strict" or "custom:LO:HI"
};

// Sentence-medial positions used for the inferential tests.
//   PaperConsistent: 4..L-2 (n = L-5), the window size the published
//   (r, F, p) triples force; requires L >= 9.
//   StrictText: 4..L-3 (n = L-6), the literal exclusion list.
//   Custom: lo..hi.
// Throws config_error when the window has fewer than 3 positions.
std::vector<int> medial_window(int length, const MedialWindowSpec& spec);

struct MedialTestResult {
    std::string statistic_name;
    double r = 0;
    double F = 0;
    double p = 1;
    int n = 0; // window size; df = (1, n-2)
};

// F = r^2 (n-2) / (1 - r^2), p = 1 - f_cdf(F, 1, n-2).
MedialTestResult f_test_from_correlation(std::string statistic_name, double r, int n);

// Simple-regression F test of ys against xs (n >= 4).
MedialTestResult regression_f_test(std::string statistic_name,
                                   const Eigen::Ref<const Eigen::VectorXd>& xs,
                                   const Eigen::Ref<const Eigen::VectorXd>& ys);

struct ProportionTestResult {
    std::uint64_t k_increasing = 0;
    std::uint64_t k_decreasing = 0;
    double statistic = 0; // n (2 p_hat - 1)^2, chi-squared(1) under the 0.5 null
    double p = 1;
};

// Tests whether increasing/decreasing word trends split 50/50.
// Requires k_inc + k_dec >= 10; throws data_error otherwise.
ProportionTestResult proportion_half_test(std::uint64_t k_inc, std::uint64_t k_dec);

} // namespace posent
