#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gsscm {

/// Eigenvalue profiles used by the quantile experiment and the simulation
/// study: all equal, proportional to (p, p-1, ..., 1), or to (p^2, ..., 1).
enum class EigenSetting { Constant, Linear, Quadratic };

const char* to_string(EigenSetting setting);
EigenSetting eigen_setting_from_string(const std::string& name);

/// Convolution of independent Gamma(shape_i, scale_i) variables.
///
/// Density and distribution function use the Moschopoulos (1985) single-series
/// expansion: the convolution is a countable mixture of Gamma(rho + k, beta1)
/// laws whose nonnegative weights sum to one, so the series is truncated when
/// the residual mixture weight drops below 1e-13. For ||X||^2 of a Gaussian
/// vector the shapes are all 1/2 and the scales are twice the eigenvalues of
/// the covariance matrix.
class CogaDistribution {
public:
    CogaDistribution(std::vector<double> shapes, std::vector<double> scales);

    const std::vector<double>& shapes() const noexcept { return shapes_; }
    const std::vector<double>& scales() const noexcept { return scales_; }

    double mean() const;
    double variance() const;

    double pdf(double x) const;
    double cdf(double x) const;
    /// Inverse CDF by bracketing root search; |cdf(result) - prob| <= 1e-10.
    double quantile(double prob) const;

private:
    std::vector<double> shapes_;
    std::vector<double> scales_;
    double beta1_ = 0.0;          // smallest scale
    double rho_ = 0.0;            // total shape
    std::vector<double> weights_; // mixture weights, sum to 1 - residual
};

/// Chi-squared with p degrees of freedom as the norm-squared law of a
/// p-variate standard normal.
CogaDistribution chi_squared_coga(int p);

enum class WhTransform { Square, Fisher, WilsonHilferty };

const char* to_string(WhTransform transform);
WhTransform wh_transform_from_string(const std::string& name);

struct WhEstimate {
    double value = 0.0;
    bool degenerate_scale = false;  // MAD was zero and prob != 0.5
};

/// Quantile of nonnegative samples estimated by assuming normality of the
/// transformed values h(r): the quantile of N(median(h), sigma^2) is computed
/// and mapped back to the r scale. sigma is the MAD of h(r), multiplied by
/// 1.4826 when scaled_mad is set (the default) so it is consistent for a
/// Gaussian standard deviation.
WhEstimate wh_quantile_estimate(const std::vector<double>& r_samples, WhTransform transform,
                                double prob, bool scaled_mad = true);

struct WhExperimentRow {
    int p = 0;
    EigenSetting setting = EigenSetting::Constant;
    WhTransform transform = WhTransform::Square;
    double f_coga_at_q3sq = 0.0;
    std::uint64_t seed = 0;
};

/// For each dimension, draw n_samples squared norms from the gamma
/// convolution whose scales follow `setting` (standardized to sum to 2p),
/// estimate the third quartile of the norms through each transform, and
/// report the true CDF at the squared estimate. The target value is 0.75.
/// Rows are deterministic for a given seed and independent of threads.
std::vector<WhExperimentRow> wh_experiment(const std::vector<int>& p_range, EigenSetting setting,
                                           std::int64_t n_samples, std::uint64_t seed,
                                           bool scaled_mad = true, int threads = 1);

}  // namespace gsscm
