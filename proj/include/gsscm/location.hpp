#pragma once

#include <Eigen/Core>

namespace gsscm {

using Matrix = Eigen::MatrixXd;  // rows are observations
using Vector = Eigen::VectorXd;

struct LocationEstimate {
    Vector center;
    int iterations_used = 0;
    /// Sum of distances for the spatial median, trimmed sum of squared
    /// distances for the k-step LTS.
    double objective = 0.0;
};

inline constexpr int kIterateUntilConvergence = -1;

/// Spatial median (geometric median): argmin over theta of sum_i ||x_i - theta||.
///
/// Weiszfeld iteration started at the coordinatewise mean, with the
/// Vardi-Zhang rule when an iterate lands on a data point. Converges when the
/// step norm drops below tol * max(1, ||center||). Throws ConvergenceError
/// (carrying the last iterate) if max_iter is reached first.
LocationEstimate spatial_median(const Matrix& X, double tol = 1e-10, int max_iter = 1000);

/// One concentration step: mean of the h = floor((n+1)/2) points nearest to
/// t_prev. Ties at rank h are broken toward the lowest index.
Vector c_step(const Matrix& X, const Vector& t_prev);

/// Trimmed sum of the h smallest squared distances, h = floor((n+1)/2);
/// the objective lowered by every C-step.
double lts_objective(const Matrix& X, const Vector& center);

/// k C-steps started from the spatial median. k = 0 returns the spatial
/// median itself (with the LTS objective); k = kIterateUntilConvergence
/// iterates until the selected h-subset repeats.
LocationEstimate kstep_lts(const Matrix& X, int k = 5, double tol = 1e-10, int max_iter = 1000);

}  // namespace gsscm
