#include "gsscm/coga.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "gsscm/errors.hpp"
#include "gsscm/parallel.hpp"
#include "gsscm/rng.hpp"

namespace gsscm {

const char* to_string(EigenSetting setting) {
    switch (setting) {
        case EigenSetting::Constant: return "constant";
        case EigenSetting::Linear: return "linear";
        case EigenSetting::Quadratic: return "quadratic";
    }
    return "unknown";
}

EigenSetting eigen_setting_from_string(const std::string& name) {
    if (name == "constant") return EigenSetting::Constant;
    if (name == "linear") return EigenSetting::Linear;
    if (name == "quadratic") return EigenSetting::Quadratic;
    throw DataError("unknown-setting", "no eigenvalue setting named '" + name + "'");
}

namespace {

constexpr double kResidualWeight = 1e-13;
constexpr int kMaxTerms = 200000;

double gamma_density(double shape, double scale, double x) {
    if (x < 0.0) return 0.0;
    if (x == 0.0) {
        if (shape > 1.0) return 0.0;
        if (shape == 1.0) return 1.0 / scale;
        return std::numeric_limits<double>::infinity();
    }
    return std::exp((shape - 1.0) * std::log(x) - x / scale - std::lgamma(shape) -
                    shape * std::log(scale));
}

}  // namespace

CogaDistribution::CogaDistribution(std::vector<double> shapes, std::vector<double> scales)
    : shapes_(std::move(shapes)), scales_(std::move(scales)) {
    if (shapes_.empty() || shapes_.size() != scales_.size()) {
        throw DataError("bad-parameters", "shape and scale vectors must match and be nonempty");
    }
    for (std::size_t i = 0; i < shapes_.size(); ++i) {
        if (!(shapes_[i] > 0.0) || !(scales_[i] > 0.0)) {
            throw DataError("bad-parameters", "shapes and scales must be strictly positive");
        }
    }

    beta1_ = *std::min_element(scales_.begin(), scales_.end());
    rho_ = std::accumulate(shapes_.begin(), shapes_.end(), 0.0);

    // Mixture weights w_k: w_0 = prod_i (beta1/beta_i)^alpha_i, then the
    // Moschopoulos recurrence. All w_k >= 0 and sum_k w_k = 1, so the
    // truncation error of pdf/cdf is controlled by the residual weight.
    double log_w0 = 0.0;
    for (std::size_t i = 0; i < shapes_.size(); ++i) {
        log_w0 += shapes_[i] * std::log(beta1_ / scales_[i]);
    }
    const double w0 = std::exp(log_w0);
    if (w0 <= 0.0) {
        throw NumericError("coga-series", "leading mixture weight underflows; scales too spread");
    }

    std::vector<double> gammas;  // gamma_k, 1-based stored at index k-1
    weights_.clear();
    weights_.push_back(w0);
    double weight_sum = w0;
    while (weight_sum < 1.0 - kResidualWeight) {
        const int k = static_cast<int>(gammas.size()) + 1;
        if (k > kMaxTerms) {
            throw NumericError("coga-series",
                               "series did not reach the target residual within the term budget");
        }
        double gk = 0.0;
        for (std::size_t i = 0; i < shapes_.size(); ++i) {
            gk += shapes_[i] * std::pow(1.0 - beta1_ / scales_[i], k) / k;
        }
        gammas.push_back(gk);

        double wk = 0.0;
        for (int j = 1; j <= k; ++j) {
            wk += j * gammas[static_cast<std::size_t>(j - 1)] *
                  weights_[static_cast<std::size_t>(k - j)];
        }
        wk /= k;
        if (!std::isfinite(wk)) {
            throw NumericError("coga-series", "mixture weight recurrence overflowed");
        }
        weights_.push_back(wk);
        weight_sum += wk;
    }
}

CogaDistribution chi_squared_coga(int p) {
    if (p < 1) throw DataError("bad-dimension", "need p >= 1");
    return CogaDistribution(std::vector<double>(static_cast<std::size_t>(p), 0.5),
                            std::vector<double>(static_cast<std::size_t>(p), 2.0));
}

double CogaDistribution::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < shapes_.size(); ++i) m += shapes_[i] * scales_[i];
    return m;
}

double CogaDistribution::variance() const {
    double v = 0.0;
    for (std::size_t i = 0; i < shapes_.size(); ++i) v += shapes_[i] * scales_[i] * scales_[i];
    return v;
}

double CogaDistribution::pdf(double x) const {
    if (x < 0.0) throw DataError("bad-argument", "coga support is [0, inf)");
    double density = 0.0;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
        density += weights_[k] * gamma_density(rho_ + static_cast<double>(k), beta1_, x);
    }
    return density;
}

double CogaDistribution::cdf(double x) const {
    if (x < 0.0) throw DataError("bad-argument", "coga support is [0, inf)");
    if (x == 0.0) return 0.0;
    double prob = 0.0;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
        prob += weights_[k] * boost::math::gamma_p(rho_ + static_cast<double>(k), x / beta1_);
    }
    return std::min(prob, 1.0);
}

double CogaDistribution::quantile(double prob) const {
    if (!(prob > 0.0 && prob < 1.0)) {
        throw DataError("bad-argument", "quantile needs prob in (0, 1)");
    }
    double lo = 0.0;
    double hi = mean() + 12.0 * std::sqrt(variance()) + beta1_;
    for (int guard = 0; cdf(hi) < prob; ++guard) {
        if (guard > 200) throw NumericError("coga-quantile", "failed to bracket the quantile");
        lo = hi;
        hi *= 2.0;
    }
    // Plain bisection: the CDF is monotone and cheap to evaluate.
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < prob) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

const char* to_string(WhTransform transform) {
    switch (transform) {
        case WhTransform::Square: return "square";
        case WhTransform::Fisher: return "fisher";
        case WhTransform::WilsonHilferty: return "wilson_hilferty";
    }
    return "unknown";
}

WhTransform wh_transform_from_string(const std::string& name) {
    if (name == "square") return WhTransform::Square;
    if (name == "fisher") return WhTransform::Fisher;
    if (name == "wilson_hilferty") return WhTransform::WilsonHilferty;
    throw DataError("unknown-transform", "no transform named '" + name + "'");
}

namespace {

double sample_median(std::vector<double> values) {
    const std::size_t n = values.size();
    const std::size_t mid = n / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    const double upper = values[mid];
    if (n % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + mid);
    return 0.5 * (lower + upper);
}

double apply_transform(WhTransform transform, double r) {
    switch (transform) {
        case WhTransform::Square: return r * r;
        case WhTransform::Fisher: return r;
        case WhTransform::WilsonHilferty: return std::cbrt(r * r);
    }
    return r;
}

double invert_transform(WhTransform transform, double h) {
    if (h <= 0.0) return 0.0;  // distances are nonnegative
    switch (transform) {
        case WhTransform::Square: return std::sqrt(h);
        case WhTransform::Fisher: return h;
        case WhTransform::WilsonHilferty: return h * std::sqrt(h);
    }
    return h;
}

}  // namespace

WhEstimate wh_quantile_estimate(const std::vector<double>& r_samples, WhTransform transform,
                                double prob, bool scaled_mad) {
    if (r_samples.empty()) throw DataError("empty-input", "no samples");
    if (!(prob > 0.0 && prob < 1.0)) throw DataError("bad-argument", "prob must be in (0, 1)");

    std::vector<double> transformed(r_samples.size());
    for (std::size_t i = 0; i < r_samples.size(); ++i) {
        transformed[i] = apply_transform(transform, r_samples[i]);
    }
    const double center = sample_median(transformed);
    for (auto& value : transformed) value = std::abs(value - center);
    const double mad = sample_median(std::move(transformed));

    if (mad == 0.0 && prob != 0.5) {
        return {invert_transform(transform, center), true};
    }
    const double sigma = scaled_mad ? 1.4826 * mad : mad;
    const double z = boost::math::quantile(boost::math::normal_distribution<double>(), prob);
    return {invert_transform(transform, center + sigma * z), false};
}

namespace {

std::vector<double> setting_scales(EigenSetting setting, int p) {
    std::vector<double> scales(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        const double base = static_cast<double>(p - i);
        switch (setting) {
            case EigenSetting::Constant: scales[static_cast<std::size_t>(i)] = 2.0; break;
            case EigenSetting::Linear: scales[static_cast<std::size_t>(i)] = base; break;
            case EigenSetting::Quadratic: scales[static_cast<std::size_t>(i)] = base * base; break;
        }
    }
    const double total = std::accumulate(scales.begin(), scales.end(), 0.0);
    for (auto& s : scales) s *= 2.0 * p / total;  // standardize to sum to 2p
    return scales;
}

}  // namespace

std::vector<WhExperimentRow> wh_experiment(const std::vector<int>& p_range, EigenSetting setting,
                                           std::int64_t n_samples, std::uint64_t seed,
                                           bool scaled_mad, int threads) {
    if (n_samples < 1) throw DataError("bad-argument", "n_samples must be >= 1");
    constexpr WhTransform kTransforms[] = {WhTransform::Square, WhTransform::Fisher,
                                           WhTransform::WilsonHilferty};

    std::vector<WhExperimentRow> rows(p_range.size() * 3);
    parallel_for(static_cast<int>(p_range.size()), threads, [&](int task) {
        const int p = p_range[static_cast<std::size_t>(task)];
        const auto scales = setting_scales(setting, p);
        const CogaDistribution dist(std::vector<double>(static_cast<std::size_t>(p), 0.5), scales);

        // Gamma(1/2, s) is s/2 times a squared standard normal, so the squared
        // norms can be drawn from plain Gaussian deviates.
        Rng rng(derive_seed(seed, (static_cast<std::uint64_t>(p) << 8) +
                                      static_cast<std::uint64_t>(setting)));
        std::vector<double> norms(static_cast<std::size_t>(n_samples));
        for (auto& r : norms) {
            double y = 0.0;
            for (double s : scales) {
                const double z = rng.next_normal();
                y += 0.5 * s * z * z;
            }
            r = std::sqrt(y);
        }

        for (int t = 0; t < 3; ++t) {
            const auto estimate = wh_quantile_estimate(norms, kTransforms[t], 0.75, scaled_mad);
            WhExperimentRow row;
            row.p = p;
            row.setting = setting;
            row.transform = kTransforms[t];
            row.f_coga_at_q3sq = dist.cdf(estimate.value * estimate.value);
            row.seed = seed;
            rows[static_cast<std::size_t>(task) * 3 + static_cast<std::size_t>(t)] = row;
        }
    });
    return rows;
}

}  // namespace gsscm
