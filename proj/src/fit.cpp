#include "magic/fit.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace magic {

namespace {

int param_count(FitModel model) { return model == FitModel::power_law ? 2 : 3; }

// theta holds (log c, a [, log b]); positivity of c and b is built in.
double model_log(FitModel model, const Eigen::VectorXd& theta, double n) {
    double v = theta[0] + theta[1] * std::log(n);
    if (model == FitModel::power_law_log) {
        double arg = std::log(std::exp(theta[2]) * n);
        if (arg <= 0.0) return std::numeric_limits<double>::quiet_NaN();
        v += std::log(arg);
    }
    return v;
}

// Jacobian rows of the model value (linear scale) or its log (log scale).
void jacobian_row(FitModel model, FitScale scale, const Eigen::VectorXd& theta, double n,
                  double f_linear, Eigen::VectorXd& row) {
    // d(log f)/dtheta first.
    row[0] = 1.0;
    row[1] = std::log(n);
    if (model == FitModel::power_law_log) {
        double logbn = std::log(std::exp(theta[2]) * n);
        row[2] = 1.0 / logbn;
    }
    if (scale == FitScale::linear) row *= f_linear;  // df = f * dlog f
}

}  // namespace

FitResult fit_scaling(const std::vector<double>& n, const std::vector<double>& y, FitModel model,
                      FitScale scale) {
    const int samples = static_cast<int>(n.size());
    const int np = param_count(model);
    if (samples != static_cast<int>(y.size()))
        throw std::invalid_argument("fit_scaling: size mismatch");
    if (samples < 5) throw std::invalid_argument("fit_scaling: need at least 5 samples");
    double n_lo = n[0], n_hi = n[0];
    for (int i = 0; i < samples; ++i) {
        if (!(n[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_scaling: samples must be strictly positive");
        n_lo = std::min(n_lo, n[i]);
        n_hi = std::max(n_hi, n[i]);
    }
    if (n_hi - n_lo <= 1e-12 * n_hi)
        throw std::runtime_error("fit_scaling: singular normal equations (no abscissa spread)");

    // Start from the closed-form log-log regression for (log c, a).
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(np);
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < samples; ++i) {
            double lx = std::log(n[i]), ly = std::log(y[i]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        double denom = samples * sxx - sx * sx;
        theta[1] = (samples * sxy - sx * sy) / denom;
        theta[0] = (sy - theta[1] * sx) / samples;
        if (model == FitModel::power_law_log) {
            theta[2] = std::log(1.5);
            theta[0] -= std::log(std::log(1.5 * n[samples / 2]));
        }
    }

    auto residuals = [&](const Eigen::VectorXd& th, Eigen::VectorXd& r) -> bool {
        for (int i = 0; i < samples; ++i) {
            double lf = model_log(model, th, n[i]);
            if (!std::isfinite(lf)) return false;
            r[i] = scale == FitScale::linear ? y[i] - std::exp(lf) : std::log(y[i]) - lf;
            if (!std::isfinite(r[i])) return false;
        }
        return true;
    };

    Eigen::VectorXd r(samples), r_try(samples);
    if (!residuals(theta, r))
        throw std::runtime_error("fit_scaling: invalid starting point");
    double ssr = r.squaredNorm();

    double lambda = 1e-3;
    int iter = 0;
    const int max_iter = 500;
    std::string trace;
    bool converged = false;
    Eigen::MatrixXd jac(samples, np);
    for (; iter < max_iter; ++iter) {
        for (int i = 0; i < samples; ++i) {
            Eigen::VectorXd row(np);
            double f_linear = std::exp(model_log(model, theta, n[i]));
            jacobian_row(model, scale, theta, n[i], f_linear, row);
            jac.row(i) = row;
        }
        Eigen::MatrixXd jtj = jac.transpose() * jac;
        Eigen::VectorXd jtr = jac.transpose() * r;

        bool accepted = false;
        for (int attempt = 0; attempt < 60 && !accepted; ++attempt) {
            Eigen::MatrixXd damped = jtj;
            damped.diagonal() += lambda * jtj.diagonal();
            Eigen::LDLT<Eigen::MatrixXd> solver(damped);
            if (solver.info() != Eigen::Success) {
                lambda *= 10.0;
                continue;
            }
            Eigen::VectorXd step = solver.solve(jtr);
            if (!step.allFinite()) {
                lambda *= 10.0;
                continue;
            }
            Eigen::VectorXd theta_try = theta + step;
            if (!residuals(theta_try, r_try)) {
                lambda *= 10.0;
                continue;
            }
            double ssr_try = r_try.squaredNorm();
            if (ssr_try <= ssr) {
                double rel_change = step.norm() / std::max(theta.norm(), 1e-300);
                theta = theta_try;
                r = r_try;
                ssr = ssr_try;
                lambda = std::max(lambda * 0.1, 1e-14);
                accepted = true;
                if (rel_change < 1e-10) converged = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!accepted) {
            char line[96];
            std::snprintf(line, sizeof line, "iter %d: ssr %.6e lambda %.1e rejected\n", iter, ssr,
                          lambda);
            trace += line;
            break;
        }
        if (converged) break;
    }
    if (!converged) {
        char head[128];
        std::snprintf(head, sizeof head,
                      "fit_scaling: no convergence after %d iterations (ssr %.6e)\n", iter, ssr);
        throw std::runtime_error(head + trace);
    }

    // Covariance of the internal parameters at the optimum, scaled by the
    // reduced residual variance, then mapped to (c, a[, b]).
    for (int i = 0; i < samples; ++i) {
        Eigen::VectorXd row(np);
        double f_linear = std::exp(model_log(model, theta, n[i]));
        jacobian_row(model, scale, theta, n[i], f_linear, row);
        jac.row(i) = row;
    }
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::MatrixXd cov = jtj.completeOrthogonalDecomposition().pseudoInverse();
    double dof = std::max(samples - np, 1);
    cov *= ssr / dof;

    FitResult out;
    out.model = model;
    out.scale = scale;
    out.iterations = iter + 1;
    double c = std::exp(theta[0]);
    out.params = {c, theta[1]};
    out.uncertainties = {c * std::sqrt(std::abs(cov(0, 0))), std::sqrt(std::abs(cov(1, 1)))};
    if (model == FitModel::power_law_log) {
        double b = std::exp(theta[2]);
        out.params.push_back(b);
        out.uncertainties.push_back(b * std::sqrt(std::abs(cov(2, 2))));
    }
    double ssr_log = 0.0;
    for (int i = 0; i < samples; ++i) {
        double d = std::log(y[i]) - model_log(model, theta, n[i]);
        ssr_log += d * d;
    }
    out.residual_rms_log = std::sqrt(ssr_log / samples);
    return out;
}

double fit_model_eval(const FitResult& fit, double n) {
    double v = fit.params[0] * std::pow(n, fit.params[1]);
    if (fit.model == FitModel::power_law_log) v *= std::log(fit.params[2] * n);
    return v;
}

}  // namespace magic
