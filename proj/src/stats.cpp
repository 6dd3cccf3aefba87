#include "posent/stats.hpp"
#include "posent/errors.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace posent {

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double beta_cf(double a, double b, double x) {
    constexpr int max_iter = 500;
    constexpr double eps = 3e-16;
    constexpr double fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0) || !(b > 0)) throw config_error("incomplete beta requires a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double f_cdf(double x, int d1, int d2) {
    if (d1 < 1 || d2 < 1) throw config_error("f_cdf requires d1, d2 >= 1");
    if (!(x > 0)) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double t = d1 * x / (d1 * x + d2);
    return regularized_incomplete_beta(0.5 * d1, 0.5 * d2, t);
}

double student_t_cdf(double t, int df) {
    if (df < 1) throw config_error("student_t_cdf requires df >= 1");
    if (t == 0.0) return 0.5;
    const double x = df / (df + t * t);
    const double half_tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
    return t > 0 ? 1.0 - half_tail : half_tail;
}

double student_t_quantile(double prob, int df) {
    if (df < 1) throw config_error("student_t_quantile requires df >= 1");
    if (!(prob > 0.0 && prob < 1.0)) throw config_error("student_t_quantile requires 0 < prob < 1");
    if (prob == 0.5) return 0.0;
    // bracket then bisect; the CDF is strictly increasing
    double lo = -1.0, hi = 1.0;
    while (student_t_cdf(lo, df) > prob) lo *= 2.0;
    while (student_t_cdf(hi, df) < prob) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, df) < prob) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-13 * (1.0 + std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

double chi_squared_cdf_1df(double x) {
    if (!(x > 0)) return 0.0;
    return std::erf(std::sqrt(0.5 * x));
}

double pearson_r(const Eigen::Ref<const Eigen::VectorXd>& xs,
                 const Eigen::Ref<const Eigen::VectorXd>& ys) {
    if (xs.size() != ys.size()) throw config_error("pearson_r: series lengths differ");
    const auto n = xs.size();
    if (n < 3) throw config_error("pearson_r requires n >= 3");
    const Eigen::VectorXd dx = xs.array() - xs.mean();
    const Eigen::VectorXd dy = ys.array() - ys.mean();
    const double sxx = dx.squaredNorm();
    const double syy = dy.squaredNorm();
    if (sxx == 0.0 || syy == 0.0) throw data_error("degenerate series");
    return dx.dot(dy) / std::sqrt(sxx * syy);
}

std::string MedialWindowSpec::label() const {
    switch (mode) {
        case WindowMode::PaperConsistent: return "paper";
        case WindowMode::StrictText: return "strict";
        case WindowMode::Custom:
            return "custom:" + std::to_string(lo) + ":" + std::to_string(hi);
    }
    return "paper";
}

std::vector<int> medial_window(int length, const MedialWindowSpec& spec) {
    int lo = 0, hi = 0;
    switch (spec.mode) {
        case WindowMode::PaperConsistent:
            if (length < 9)
                throw config_error("paper-consistent medial window requires length >= 9");
            lo = 4;
            hi = length - 2;
            break;
        case WindowMode::StrictText:
            lo = 4;
            hi = length - 3;
            break;
        case WindowMode::Custom:
            lo = spec.lo;
            hi = spec.hi;
            if (lo < 1 || hi > length)
                throw config_error("custom medial window out of 1.." + std::to_string(length));
            break;
    }
    if (hi - lo + 1 < 3) throw config_error("medial window smaller than 3 positions");
    std::vector<int> positions;
    positions.reserve(hi - lo + 1);
    for (int p = lo; p <= hi; ++p) positions.push_back(p);
    return positions;
}

MedialTestResult f_test_from_correlation(std::string statistic_name, double r, int n) {
    if (n < 4) throw config_error("regression F test requires n >= 4");
    if (!(r >= -1.0 && r <= 1.0)) throw config_error("correlation outside [-1, 1]");
    MedialTestResult out;
    out.statistic_name = std::move(statistic_name);
    out.r = r;
    out.n = n;
    const double r2 = r * r;
    if (r2 >= 1.0) {
        out.F = std::numeric_limits<double>::infinity();
        out.p = 0.0;
        return out;
    }
    out.F = r2 * (n - 2) / (1.0 - r2);
    out.p = 1.0 - f_cdf(out.F, 1, n - 2);
    return out;
}

MedialTestResult regression_f_test(std::string statistic_name,
                                   const Eigen::Ref<const Eigen::VectorXd>& xs,
                                   const Eigen::Ref<const Eigen::VectorXd>& ys) {
    if (xs.size() < 4) throw config_error("regression F test requires n >= 4");
    const double r = pearson_r(xs, ys);
    return f_test_from_correlation(std::move(statistic_name), r, static_cast<int>(xs.size()));
}

ProportionTestResult proportion_half_test(std::uint64_t k_inc, std::uint64_t k_dec) {
    const std::uint64_t n = k_inc + k_dec;
    if (n < 10) throw data_error("proportion test requires at least 10 classified words");
    ProportionTestResult out;
    out.k_increasing = k_inc;
    out.k_decreasing = k_dec;
    const double p_hat = static_cast<double>(k_inc) / static_cast<double>(n);
    out.statistic = static_cast<double>(n) * (2.0 * p_hat - 1.0) * (2.0 * p_hat - 1.0);
    out.p = 1.0 - chi_squared_cdf_1df(out.statistic);
    return out;
}

} // namespace posent
