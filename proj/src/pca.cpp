#include "gsscm/pca.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "gsscm/errors.hpp"

namespace gsscm {

const char* to_string(StandardizeMode mode) {
    return mode == StandardizeMode::Robust ? "robust" : "classical";
}

StandardizeMode standardize_mode_from_string(const std::string& name) {
    if (name == "robust") return StandardizeMode::Robust;
    if (name == "classical") return StandardizeMode::Classical;
    throw DataError("unknown-mode", "no standardization mode named '" + name + "'");
}

namespace {

double column_median(std::vector<double> values) {
    const std::size_t n = values.size();
    const std::size_t mid = n / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    const double upper = values[mid];
    if (n % 2 == 1) return upper;
    return 0.5 * (upper + *std::max_element(values.begin(), values.begin() + mid));
}

}  // namespace

std::pair<Matrix, ColumnStandardization> standardize(const Matrix& X, StandardizeMode mode) {
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    if (n < 2) throw DataError("sample-too-small", "standardization needs n >= 2");

    ColumnStandardization params;
    params.mode = mode;
    params.center = Vector(p);
    params.scale = Vector(p);

    for (Eigen::Index j = 0; j < p; ++j) {
        std::vector<double> column(X.col(j).data(), X.col(j).data() + n);
        if (mode == StandardizeMode::Classical) {
            const double mean = X.col(j).mean();
            const double var = (X.col(j).array() - mean).square().sum() / (n - 1.0);
            params.center[j] = mean;
            params.scale[j] = std::sqrt(var);
        } else {
            const double med = column_median(column);
            for (auto& value : column) value = std::abs(value - med);
            params.center[j] = med;
            params.scale[j] = 1.4826 * column_median(std::move(column));
        }
        if (!(params.scale[j] > 0.0)) {
            throw DataError("degenerate-column",
                            "column " + std::to_string(j) + " has zero scale");
        }
    }
    return {apply_standardization(X, params), std::move(params)};
}

Matrix apply_standardization(const Matrix& X, const ColumnStandardization& params) {
    return (X.rowwise() - params.center.transpose()).array().rowwise() /
           params.scale.transpose().array();
}

Matrix undo_standardization(const Matrix& Z, const ColumnStandardization& params) {
    return (Z.array().rowwise() * params.scale.transpose().array()).matrix().rowwise() +
           params.center.transpose();
}

PcaModel fit_pca(const Matrix& X, int k, RadialMethod method) {
    const StandardizeMode mode = method == RadialMethod::Classical ? StandardizeMode::Classical
                                                                   : StandardizeMode::Robust;
    const LocationSpec location = method == RadialMethod::Classical ? LocationSpec::mean()
                                                                    : LocationSpec::kstep_lts();
    return fit_pca(X, k, method, mode, location);
}

PcaModel fit_pca(const Matrix& X, int k, RadialMethod method, StandardizeMode mode,
                 const LocationSpec& location) {
    if (k < 1 || k > X.cols()) {
        throw DataError("bad-argument", "component count k must be in [1, p]");
    }
    auto [Z, params] = standardize(X, mode);
    const ScatterEstimate estimate = gsscm(Z, method, location);

    PcaModel model;
    model.center = estimate.location;
    model.loadings = estimate.eigenvectors.leftCols(k);
    model.eigenvalues = estimate.eigenvalues.head(k);
    model.method = method;
    model.column_standardization = std::move(params);
    return model;
}

Matrix centered_observations(const PcaModel& model, const Matrix& X) {
    if (X.cols() != model.loadings.rows()) {
        throw DataError("dimension-mismatch", "data width does not match the model");
    }
    return apply_standardization(X, model.column_standardization).rowwise() -
           model.center.transpose();
}

Matrix scores(const PcaModel& model, const Matrix& X) {
    return centered_observations(model, X) * model.loadings;
}

double score_distance(const Vector& score, const Vector& scales) {
    if (score.size() != scales.size()) {
        throw DataError("dimension-mismatch", "score and scale lengths differ");
    }
    if ((scales.array() <= 0.0).any()) {
        throw DataError("bad-argument", "score scales must be positive");
    }
    return (score.array() / scales.array()).matrix().norm();
}

double orthogonal_distance(const Vector& z, const PcaModel& model, const Vector& score) {
    if (z.size() != model.loadings.rows() || score.size() != model.loadings.cols()) {
        throw DataError("dimension-mismatch", "observation/score sizes do not match the model");
    }
    return (z - model.loadings * score).norm();
}

std::vector<double> variance_explained(const Vector& eigenvalues) {
    const double total = eigenvalues.sum();
    std::vector<double> fractions(static_cast<std::size_t>(eigenvalues.size()));
    double cumulative = 0.0;
    for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
        cumulative += eigenvalues[j];
        fractions[static_cast<std::size_t>(j)] = total > 0.0 ? cumulative / total : 0.0;
    }
    return fractions;
}

const char* to_string(OutlierFlag flag) {
    switch (flag) {
        case OutlierFlag::Regular: return "regular";
        case OutlierFlag::OrthogonalOutlier: return "orthogonal_outlier";
        case OutlierFlag::ScoreOutlier: return "score_outlier";
        case OutlierFlag::BadLeverage: return "bad_leverage";
    }
    return "unknown";
}

OutlierMap outlier_map(const Matrix& X, int k, RadialMethod method) {
    const StandardizeMode mode = method == RadialMethod::Classical ? StandardizeMode::Classical
                                                                   : StandardizeMode::Robust;
    const LocationSpec location = method == RadialMethod::Classical ? LocationSpec::mean()
                                                                    : LocationSpec::kstep_lts();
    return outlier_map(X, k, method, mode, location, true);
}

OutlierMap outlier_map(const Matrix& X, int k, RadialMethod method, StandardizeMode mode,
                       const LocationSpec& location, bool scaled_score_mad) {
    OutlierMap map;
    map.model = fit_pca(X, k, method, mode, location);
    const Matrix Z = centered_observations(map.model, X);
    map.score_matrix = Z * map.model.loadings;
    const Eigen::Index n = X.rows();

    map.score_scales = Vector(k);
    for (int j = 0; j < k; ++j) {
        if (method == RadialMethod::Classical) {
            const double mean = map.score_matrix.col(j).mean();
            map.score_scales[j] =
                std::sqrt((map.score_matrix.col(j).array() - mean).square().sum() / (n - 1.0));
        } else {
            std::vector<double> column(map.score_matrix.col(j).data(),
                                       map.score_matrix.col(j).data() + n);
            const double med = column_median(column);
            for (auto& value : column) value = std::abs(value - med);
            const double mad = column_median(std::move(column));
            map.score_scales[j] = scaled_score_mad ? 1.4826 * mad : mad;
        }
        if (!(map.score_scales[j] > 0.0)) {
            throw DataError("degenerate-column",
                            "score column " + std::to_string(j) + " has zero scale");
        }
    }

    // Orthogonal distances below numerical noise count as exact zeros, so a
    // full-rank fit (k = p) does not flag anything.
    const double od_noise = 1e-12 * std::sqrt(static_cast<double>(X.cols()));
    std::vector<double> od(static_cast<std::size_t>(n));
    std::vector<double> sd(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const Vector score = map.score_matrix.row(i).transpose();
        sd[static_cast<std::size_t>(i)] = score_distance(score, map.score_scales);
        double distance = orthogonal_distance(Z.row(i).transpose(), map.model, score);
        if (distance < od_noise) distance = 0.0;
        od[static_cast<std::size_t>(i)] = distance;
    }

    const double sd_cutoff =
        std::sqrt(boost::math::quantile(boost::math::chi_squared_distribution<double>(k), 0.975));

    // Same Wilson-Hilferty device as the scatter cutoffs: Gaussian 0.975
    // quantile of OD^(2/3), transformed back.
    std::vector<double> transformed(od.size());
    for (std::size_t i = 0; i < od.size(); ++i) transformed[i] = std::cbrt(od[i] * od[i]);
    const double od_center = column_median(transformed);
    for (auto& value : transformed) value = std::abs(value - od_center);
    const double od_spread = 1.4826 * column_median(std::move(transformed));
    const double z975 = boost::math::quantile(boost::math::normal_distribution<double>(), 0.975);
    const double od_base = od_center + od_spread * z975;
    const double od_cutoff = od_base <= 0.0 ? 0.0 : od_base * std::sqrt(od_base);

    map.rows.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        OutlierMapRow& row = map.rows[static_cast<std::size_t>(i)];
        row.index = static_cast<int>(i);
        row.sd = sd[static_cast<std::size_t>(i)];
        row.od = od[static_cast<std::size_t>(i)];
        row.sd_cutoff = sd_cutoff;
        row.od_cutoff = od_cutoff;
        const bool high_sd = row.sd > sd_cutoff;
        const bool high_od = row.od > od_cutoff;
        row.flag = high_sd ? (high_od ? OutlierFlag::BadLeverage : OutlierFlag::ScoreOutlier)
                           : (high_od ? OutlierFlag::OrthogonalOutlier : OutlierFlag::Regular);
    }
    return map;
}

}  // namespace gsscm
