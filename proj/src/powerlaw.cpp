#include "posent/powerlaw.hpp"
#include "posent/errors.hpp"
#include "posent/stats.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace posent {

namespace {

Eigen::VectorXd model_offset(const Eigen::VectorXd& xs, double a, double b, double c) {
    return a * xs.array().pow(b) + c;
}

double ssr_of(const Eigen::VectorXd& residuals) {
    return residuals.squaredNorm();
}

// Gradient small relative to the residual/curvature scale; at a minimum the
// angle term collapses to rounding error, far away it is O(1).
bool gradient_converged(const Eigen::Vector3d& g, const Eigen::Matrix3d& jtj, double ssr, int n) {
    const double s = std::max(ssr, 1e-300) * n;
    for (int j = 0; j < 3; ++j) {
        const double tol = 1e-6 * std::sqrt(s * std::max(jtj(j, j), 0.0)) + 1e-300;
        if (std::fabs(g[j]) > tol) return false;
    }
    return true;
}

struct OlsLine {
    double intercept = 0;
    double slope = 0;
    double ss_res = 0;
    double ss_tot = 0;
};

OlsLine ols(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys) {
    const double mx = xs.mean(), my = ys.mean();
    const Eigen::VectorXd dx = xs.array() - mx;
    const Eigen::VectorXd dy = ys.array() - my;
    const double sxx = dx.squaredNorm();
    OlsLine line;
    line.ss_tot = dy.squaredNorm();
    line.slope = sxx > 0 ? dx.dot(dy) / sxx : 0.0;
    line.intercept = my - line.slope * mx;
    line.ss_res = (dy - line.slope * dx).squaredNorm();
    return line;
}

} // namespace

double adjusted_r2(double ss_res, double ss_tot, int n, int k) {
    if (n <= k + 1) throw config_error("adjusted_r2 requires n > k+1");
    if (!(ss_tot > 0)) throw config_error("adjusted_r2 requires ss_tot > 0");
    return 1.0 - (ss_res / (n - k - 1)) / (ss_tot / (n - 1));
}

std::vector<ParamBounds> confidence_bounds_95(const Eigen::Ref<const Eigen::MatrixXd>& jtj,
                                              const Eigen::Ref<const Eigen::VectorXd>& estimates,
                                              double ss_res, int n) {
    const int k = static_cast<int>(estimates.size());
    if (jtj.rows() != k || jtj.cols() != k) throw config_error("confidence_bounds_95: shape mismatch");
    if (n <= k) throw config_error("confidence_bounds_95 requires n > k");
    std::vector<ParamBounds> bounds(k);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
    if (!lu.isInvertible()) return bounds; // flagged unavailable
    const Eigen::MatrixXd inv = lu.inverse();
    const double sigma2 = std::max(ss_res, 0.0) / (n - k);
    const double tq = student_t_quantile(0.975, n - k);
    for (int j = 0; j < k; ++j) {
        const double v = inv(j, j) * sigma2;
        if (!std::isfinite(v) || v < 0) continue;
        const double half = tq * std::sqrt(v);
        bounds[j] = {estimates[j] - half, estimates[j] + half, true};
    }
    return bounds;
}

LogLogFit fit_power_law_loglog(const Eigen::Ref<const Eigen::VectorXd>& xs,
                               const Eigen::Ref<const Eigen::VectorXd>& ys) {
    const auto n = xs.size();
    if (n != ys.size()) throw config_error("fit_power_law_loglog: length mismatch");
    if (n < 3) throw config_error("fit_power_law_loglog requires n >= 3");
    if ((xs.array() <= 0).any() || (ys.array() <= 0).any())
        throw data_error("fit_power_law_loglog requires positive xs and ys");
    const Eigen::VectorXd lx = xs.array().log();
    const Eigen::VectorXd ly = ys.array().log();
    const OlsLine line = ols(lx, ly);
    LogLogFit fit;
    fit.a = std::exp(line.intercept);
    fit.b = line.slope;
    if (line.ss_tot > 0) fit.adj_r2 = adjusted_r2(line.ss_res, line.ss_tot, static_cast<int>(n), 1);
    return fit;
}

PowerLawFit fit_power_law_offset(const Eigen::Ref<const Eigen::VectorXd>& xs,
                                 const Eigen::Ref<const Eigen::VectorXd>& ys,
                                 std::optional<std::array<double, 3>> init) {
    const auto n = xs.size();
    if (n != ys.size()) throw config_error("fit_power_law_offset: length mismatch");
    if (n < 4) throw config_error("fit_power_law_offset requires n >= 4");
    if ((xs.array() <= 0).any()) throw config_error("fit_power_law_offset requires positive xs");

    PowerLawFit fit;
    fit.n_points = static_cast<int>(n);

    double a, b, c;
    if (init) {
        a = (*init)[0];
        b = (*init)[1];
        c = (*init)[2];
    } else {
        c = ys.minCoeff();
        const Eigen::VectorXd shifted = (ys.array() - c + 1e-9).log();
        const OlsLine line = ols(xs.array().log(), shifted);
        a = std::exp(line.intercept);
        b = line.slope;
    }

    const Eigen::VectorXd x = xs;
    const Eigen::VectorXd y = ys;
    double ssr = ssr_of(model_offset(x, a, b, c) - y);
    fit.ssr_trace.push_back(ssr);

    double lambda = 1e-3;
    bool step_converged = false;
    Eigen::Vector3d g = Eigen::Vector3d::Zero();
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();

    int iter = 0;
    for (; iter < 200; ++iter) {
        const Eigen::ArrayXd xb = x.array().pow(b);
        const Eigen::VectorXd resid = (a * xb + c).matrix() - y;
        Eigen::MatrixXd J(n, 3);
        J.col(0) = xb.matrix();
        J.col(1) = (a * xb * x.array().log()).matrix();
        J.col(2) = Eigen::VectorXd::Ones(n);
        jtj = J.transpose() * J;
        g = J.transpose() * resid;

        if (gradient_converged(g, jtj, ssr, static_cast<int>(n))) {
            step_converged = true;
            break;
        }

        bool accepted = false;
        while (lambda < 1e15) {
            Eigen::Matrix3d damped = jtj;
            damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-300);
            const Eigen::Vector3d delta = damped.ldlt().solve(-g);
            if (!delta.allFinite()) {
                fit.diagnostics = "singular normal equations";
                break;
            }
            const double at = a + delta[0], bt = b + delta[1], ct = c + delta[2];
            const double ssr_trial = ssr_of(model_offset(x, at, bt, ct) - y);
            if (std::isfinite(ssr_trial) && ssr_trial < ssr) {
                const double relstep =
                    delta.norm() / (Eigen::Vector3d(a, b, c).norm() + 1e-300);
                a = at;
                b = bt;
                c = ct;
                ssr = ssr_trial;
                fit.ssr_trace.push_back(ssr);
                lambda = std::max(lambda * 0.1, 1e-12);
                accepted = true;
                if (relstep < 1e-10) step_converged = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!accepted || step_converged) break;
    }
    fit.iterations = iter;
    fit.a = a;
    fit.b = b;
    fit.c = c;
    fit.ss_res = ssr;

    // final curvature/gradient at the accepted parameters
    {
        const Eigen::ArrayXd xb = x.array().pow(b);
        const Eigen::VectorXd resid = (a * xb + c).matrix() - y;
        Eigen::MatrixXd J(n, 3);
        J.col(0) = xb.matrix();
        J.col(1) = (a * xb * x.array().log()).matrix();
        J.col(2) = Eigen::VectorXd::Ones(n);
        jtj = J.transpose() * J;
        g = J.transpose() * resid;
    }
    fit.converged = gradient_converged(g, jtj, ssr, static_cast<int>(n));
    if (!fit.converged && fit.diagnostics.empty())
        fit.diagnostics = "did not reach gradient tolerance";

    const double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();
    if (n > 4 && ss_tot > 0) fit.adj_r2 = adjusted_r2(ssr, ss_tot, static_cast<int>(n), 3);

    const auto bounds = confidence_bounds_95(jtj, Eigen::Vector3d(a, b, c), ssr, static_cast<int>(n));
    for (int j = 0; j < 3; ++j) fit.ci95[j] = bounds[j];
    if (!bounds[0].valid && fit.diagnostics.empty()) fit.diagnostics = "singular J^T J";
    return fit;
}

} // namespace posent
