// fit.hpp — Damped least-squares fits of scaling laws with parameter
// covariance estimates.

#pragma once

#include <string>
#include <vector>

namespace magic {

enum class FitModel {
    power_law,      // y = c * N^a
    power_law_log,  // y = c * N^a * log(b N)
};

// Objective space: linear minimizes sum (y - f)^2, log minimizes
// sum (log y - log f)^2. Both report the RMS of log residuals.
enum class FitScale { linear, log };

struct FitResult {
    FitModel model = FitModel::power_law;
    FitScale scale = FitScale::linear;
    std::vector<double> params;         // c, a [, b]
    std::vector<double> uncertainties;  // sqrt(diag cov), cov = s^2 (J^T J)^-1
    double residual_rms_log = 0.0;
    int iterations = 0;
};

// Levenberg-damped Gauss-Newton on the chosen objective; converged when the
// relative parameter change drops below 1e-10. Requires >= 5 strictly
// positive samples. Throws std::invalid_argument on bad input and
// std::runtime_error (with an iteration trace) on non-convergence or a
// singular normal system.
FitResult fit_scaling(const std::vector<double>& n, const std::vector<double>& y,
                      FitModel model, FitScale scale = FitScale::linear);

double fit_model_eval(const FitResult& fit, double n);

}  // namespace magic
