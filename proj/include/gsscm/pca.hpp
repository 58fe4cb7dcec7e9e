#pragma once

#include <string>
#include <vector>

#include "gsscm/scatter.hpp"

namespace gsscm {

enum class StandardizeMode { Robust, Classical };

const char* to_string(StandardizeMode mode);
StandardizeMode standardize_mode_from_string(const std::string& name);

/// Per-column location/scale used to standardize a dataset.
struct ColumnStandardization {
    Vector center;
    Vector scale;
    StandardizeMode mode = StandardizeMode::Robust;
};

/// Column-wise standardization. Robust mode uses the median and the
/// 1.4826-scaled MAD, classical mode the mean and standard deviation.
/// A column with zero scale raises DataError("degenerate-column") naming it.
std::pair<Matrix, ColumnStandardization> standardize(const Matrix& X, StandardizeMode mode);

Matrix apply_standardization(const Matrix& X, const ColumnStandardization& params);
Matrix undo_standardization(const Matrix& Z, const ColumnStandardization& params);

struct PcaModel {
    Vector center;        // location estimate in standardized coordinates
    Matrix loadings;      // p x k, orthonormal columns
    Vector eigenvalues;   // k largest, descending
    RadialMethod method = RadialMethod::Classical;
    ColumnStandardization column_standardization;
};

/// PCA on the scatter estimate: loadings are the k leading eigenvectors of
/// gsscm(standardized X). The default standardization is classical for the
/// Classical method and robust otherwise, matching the default location
/// (mean for Classical, 5-step LTS otherwise); both can be overridden.
PcaModel fit_pca(const Matrix& X, int k, RadialMethod method);
PcaModel fit_pca(const Matrix& X, int k, RadialMethod method, StandardizeMode mode,
                 const LocationSpec& location);

/// Projections of the standardized, centered observations onto the loadings.
Matrix scores(const PcaModel& model, const Matrix& X);

/// Standardized, centered observations (rows).
Matrix centered_observations(const PcaModel& model, const Matrix& X);

/// Weighted Euclidean norm of a score vector: sqrt(sum (s_j / scale_j)^2).
double score_distance(const Vector& score, const Vector& scales);

/// Norm of the residual after projecting back: ||z - V s||.
double orthogonal_distance(const Vector& z, const PcaModel& model, const Vector& score);

/// Cumulative eigenvalue fractions of a scatter estimate, for choosing k.
std::vector<double> variance_explained(const Vector& eigenvalues);

enum class OutlierFlag { Regular, OrthogonalOutlier, ScoreOutlier, BadLeverage };

const char* to_string(OutlierFlag flag);

struct OutlierMapRow {
    int index = 0;
    double sd = 0.0;
    double od = 0.0;
    double sd_cutoff = 0.0;
    double od_cutoff = 0.0;
    OutlierFlag flag = OutlierFlag::Regular;
};

struct OutlierMap {
    PcaModel model;
    Matrix score_matrix;
    Vector score_scales;
    std::vector<OutlierMapRow> rows;
};

/// Score distance / orthogonal distance diagnostics with 0.975-level cutoffs:
/// sd_cutoff = sqrt(chi2 quantile), od_cutoff from the Gaussian quantile of
/// the 2/3 powers of the orthogonal distances. Score scales are standard
/// deviations for Classical and 1.4826-scaled MADs otherwise (the scaling
/// can be turned off).
OutlierMap outlier_map(const Matrix& X, int k, RadialMethod method);
OutlierMap outlier_map(const Matrix& X, int k, RadialMethod method, StandardizeMode mode,
                       const LocationSpec& location, bool scaled_score_mad);

}  // namespace gsscm
