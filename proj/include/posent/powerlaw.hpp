#pragma once

#include <Eigen/Core>

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace posent {

struct ParamBounds {
    double low = std::numeric_limits<double>::quiet_NaN();
    double high = std::numeric_limits<double>::quiet_NaN();
    bool valid = false;
};

struct PowerLawFit {
    double a = 0;
    double b = 0;
    double c = 0; // offset; 0 for the two-parameter model
    std::array<ParamBounds, 3> ci95{};
    double adj_r2 = std::numeric_limits<double>::quiet_NaN();
    double ss_res = std::numeric_limits<double>::quiet_NaN();
    int n_points = 0;
    bool converged = false;
    int iterations = 0;
    std::vector<double> ssr_trace; // accepted objective values, nonincreasing
    std::string diagnostics;
};

// Fits y = a x^b + c by damped Gauss-Newton (Levenberg-Marquardt damping on
// the normal equations). Auto-init: c0 = min(y), (a0, b0) from a log-log
// regression of y - c0 + 1e-9. Stops when the relative step drops below 1e-10
// or after 200 iterations. ci95 come from the residual-variance-scaled inverse
// of J^T J and the two-sided t quantile at n-3 df. Requires n >= 4 and all
// xs > 0 (throws config_error). adj_r2 is NaN when n == 4 (no residual df).
PowerLawFit fit_power_law_offset(const Eigen::Ref<const Eigen::VectorXd>& xs,
                                 const Eigen::Ref<const Eigen::VectorXd>& ys,
                                 std::optional<std::array<double, 3>> init = std::nullopt);

struct LogLogFit {
    double a = 0;
    double b = 0;
    double adj_r2 = std::numeric_limits<double>::quiet_NaN(); // NaN when ys constant
};

// Ordinary least squares of ln y on ln x; a = exp(intercept), b = slope.
// Requires n >= 3 and positive xs, ys (throws config_error / data_error).
LogLogFit fit_power_law_loglog(const Eigen::Ref<const Eigen::VectorXd>& xs,
                               const Eigen::Ref<const Eigen::VectorXd>& ys);

// 1 - (ss_res/(n-k-1)) / (ss_tot/(n-1)); throws config_error when n <= k+1
// or ss_tot <= 0.
double adjusted_r2(double ss_res, double ss_tot, int n, int k);

// estimate +- t_{0.975, n-k} * sqrt(diag((J^T J)^-1) * ss_res/(n-k)).
// Bounds come back invalid when J^T J is singular.
std::vector<ParamBounds> confidence_bounds_95(const Eigen::Ref<const Eigen::MatrixXd>& jtj,
                                              const Eigen::Ref<const Eigen::VectorXd>& estimates,
                                              double ss_res, int n);

} // namespace posent
