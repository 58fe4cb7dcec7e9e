#include "gsscm/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gsscm/errors.hpp"
#include "gsscm/rng.hpp"

namespace gsscm {

namespace {

Vector resolve_location(const Matrix& X, const LocationSpec& spec) {
    switch (spec.kind) {
        case LocationSpec::Kind::KStepLts:
            return kstep_lts(X, spec.k).center;
        case LocationSpec::Kind::SpatialMedian:
            return spatial_median(X).center;
        case LocationSpec::Kind::Mean:
            return X.colwise().mean();
        case LocationSpec::Kind::Fixed:
            if (spec.fixed.size() != X.cols()) {
                throw DataError("dimension-mismatch",
                                "fixed location has size " + std::to_string(spec.fixed.size()) +
                                    ", data has " + std::to_string(X.cols()) + " columns");
            }
            return spec.fixed;
    }
    throw DataError("bad-argument", "unknown location kind");
}

ScatterEstimate estimate_with_location(const Matrix& X, RadialMethod method,
                                       const Vector& center) {
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();

    std::vector<double> distances(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        distances[static_cast<std::size_t>(i)] = (X.row(i).transpose() - center).norm();
    }

    Cutoffs cutoffs;
    if (uses_cutoffs(method)) {
        if (n < p + 1) {
            throw DataError("sample-too-small", "cutoff methods need n >= p+1, got n=" +
                                                    std::to_string(n) + ", p=" + std::to_string(p));
        }
        cutoffs = compute_cutoffs(distances, static_cast<int>(p));
    } else if (n >= p + 1) {
        cutoffs = compute_cutoffs(distances, static_cast<int>(p));  // descriptive only
    }

    // Accumulate g g^T with g = xi(d) * (x - T), so far-away points never
    // produce huge intermediates.
    Matrix S = Matrix::Zero(p, p);
    bool any_nonzero = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = xi(method, distances[static_cast<std::size_t>(i)], cutoffs);
        if (w == 0.0) continue;
        const Vector g = w * (X.row(i).transpose() - center);
        if (g.squaredNorm() > 0.0) any_nonzero = true;
        S.noalias() += g * g.transpose();
    }
    if (!any_nonzero) {
        throw DataError("degenerate-scatter", "all weighted terms vanish; scatter would be zero");
    }
    S /= static_cast<double>(n);

    ScatterEstimate result;
    result.matrix = std::move(S);
    std::tie(result.eigenvalues, result.eigenvectors) = eigendecompose(result.matrix);

    // Eq-style sums of rank-1 PSD terms cannot have genuinely negative
    // eigenvalues; anything beyond roundoff indicates a bug.
    const double floor = -1e-10 * std::max(1.0, result.eigenvalues.cwiseAbs().maxCoeff());
    for (Eigen::Index j = 0; j < result.eigenvalues.size(); ++j) {
        double& lambda = result.eigenvalues[j];
        if (lambda < floor) {
            throw NumericError("negative-eigenvalue",
                               "eigenvalue " + std::to_string(lambda) + " below PSD floor");
        }
        if (lambda < 0.0) lambda = 0.0;
    }

    result.location = center;
    result.method = method;
    result.cutoffs = cutoffs;
    return result;
}

}  // namespace

std::pair<Vector, Matrix> eigendecompose(const Matrix& S) {
    if (S.rows() != S.cols()) throw DataError("invalid-matrix", "matrix is not square");
    const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
    if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw DataError("invalid-matrix", "matrix is not symmetric within tolerance");
    }

    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (S + S.transpose()));
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigensolver-failure", "symmetric eigendecomposition failed");
    }

    const Eigen::Index p = S.rows();
    Vector values(p);
    Matrix vectors(p, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        values[j] = solver.eigenvalues()[p - 1 - j];
        vectors.col(j) = solver.eigenvectors().col(p - 1 - j);
        Eigen::Index argmax = 0;
        vectors.col(j).cwiseAbs().maxCoeff(&argmax);
        if (vectors(argmax, j) < 0.0) vectors.col(j) = -vectors.col(j);
    }
    return {std::move(values), std::move(vectors)};
}

ScatterEstimate gsscm(const Matrix& X, RadialMethod method, const LocationSpec& location) {
    if (X.rows() < 2) throw DataError("sample-too-small", "need at least 2 observations");
    return estimate_with_location(X, method, resolve_location(X, location));
}

ScatterEstimate symmetrized_gsscm(const Matrix& X, RadialMethod method) {
    const Eigen::Index n = X.rows();
    if (n < 2) throw DataError("sample-too-small", "need at least 2 observations");
    const Eigen::Index pairs = n * (n - 1) / 2;
    Matrix D(pairs, X.cols());
    Eigen::Index row = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            D.row(row++) = X.row(i) - X.row(j);
        }
    }
    return estimate_with_location(D, method, Vector::Zero(X.cols()));
}

Matrix shape_matrix(const Matrix& S) {
    auto [values, vectors] = eigendecompose(S);
    double log_det = 0.0;
    for (Eigen::Index j = 0; j < values.size(); ++j) {
        if (values[j] <= 0.0) {
            throw DataError("singular-scatter", "shape needs a positive determinant");
        }
        log_det += std::log(values[j]);
    }
    return std::exp(-log_det / static_cast<double>(S.rows())) * S;
}

double consistency_factor(RadialMethod method, int p, std::int64_t mc_samples,
                          std::uint64_t seed) {
    if (p < 1) throw DataError("bad-dimension", "p must be >= 1");
    if (method == RadialMethod::Classical) return 1.0;  // E[X_1^2] = 1
    if (method == RadialMethod::SSCM) return 1.0 / p;   // components of a unit vector sum to 1

    // Stage 1: population cutoffs from a large calibration draw of ||X||.
    constexpr std::int64_t kCalibration = 1000000;
    Rng calibration_rng(derive_seed(seed, 1));
    std::vector<double> norms(static_cast<std::size_t>(kCalibration));
    for (auto& value : norms) {
        double sq = 0.0;
        for (int j = 0; j < p; ++j) {
            const double z = calibration_rng.next_normal();
            sq += z * z;
        }
        value = std::sqrt(sq);
    }
    const Cutoffs cutoffs = compute_cutoffs(norms, p);

    // Stage 2: E[g_1(X)^2] with the cutoffs held fixed.
    Rng rng(derive_seed(seed, 2));
    double total = 0.0;
    for (std::int64_t i = 0; i < mc_samples; ++i) {
        const double x1 = rng.next_normal();
        double sq = x1 * x1;
        for (int j = 1; j < p; ++j) {
            const double z = rng.next_normal();
            sq += z * z;
        }
        const double w = xi(method, std::sqrt(sq), cutoffs);
        total += w * w * x1 * x1;
    }
    return total / static_cast<double>(mc_samples);
}

}  // namespace gsscm
