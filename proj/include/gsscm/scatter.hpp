#pragma once

#include <cstdint>
#include <utility>

#include "gsscm/location.hpp"
#include "gsscm/radial.hpp"

namespace gsscm {

/// How the center T used in the scatter estimate is obtained.
struct LocationSpec {
    enum class Kind { KStepLts, SpatialMedian, Mean, Fixed };

    Kind kind = Kind::KStepLts;
    int k = 5;
    Vector fixed;

    static LocationSpec kstep_lts(int k = 5) { return {Kind::KStepLts, k, {}}; }
    static LocationSpec spatial_median() { return {Kind::SpatialMedian, 0, {}}; }
    static LocationSpec mean() { return {Kind::Mean, 0, {}}; }
    static LocationSpec fixed_at(Vector v) { return {Kind::Fixed, 0, std::move(v)}; }
};

/// A symmetric PSD scatter matrix together with its sorted spectral
/// decomposition and the center it was computed around.
struct ScatterEstimate {
    Matrix matrix;
    Vector eigenvalues;   // descending
    Matrix eigenvectors;  // columns aligned with eigenvalues
    Vector location;
    RadialMethod method = RadialMethod::Classical;
    Cutoffs cutoffs;  // zeros for methods that do not use them
};

/// Spectral decomposition of a symmetric matrix: eigenvalues descending,
/// orthonormal eigenvectors with each column's largest-magnitude entry made
/// positive. Rejects input whose asymmetry exceeds 1e-10 relative to its
/// largest entry.
std::pair<Vector, Matrix> eigendecompose(const Matrix& S);

/// The generalized spatial sign covariance matrix
///   S = (1/n) sum_i xi^2(||x_i - T||) (x_i - T)(x_i - T)^T,
/// with cutoffs computed from the distances ||x_i - T||.
///
/// Cutoff-based methods need n >= p + 1 (DataError "sample-too-small"
/// otherwise). If every term of the sum vanishes the estimate would be
/// identically zero and DataError "degenerate-scatter" is thrown.
ScatterEstimate gsscm(const Matrix& X, RadialMethod method,
                      const LocationSpec& location = LocationSpec::kstep_lts());

/// GSSCM of the n(n-1)/2 pairwise differences x_i - x_j (i < j) with the
/// location fixed at zero. Exactly invariant under shifts of X.
ScatterEstimate symmetrized_gsscm(const Matrix& X, RadialMethod method);

/// Determinant-one shape component: det(S)^(-1/p) * S.
Matrix shape_matrix(const Matrix& S);

/// Consistency factor c = E[g_1(X)^2] at the p-variate standard normal,
/// where g(x) = x * xi(||x||). Cutoff methods use a two-stage Monte Carlo:
/// population cutoffs from a 10^6-norm calibration draw, then the expectation
/// over mc_samples fresh draws. Classical (1) and SSCM (1/p) are returned in
/// closed form.
double consistency_factor(RadialMethod method, int p, std::int64_t mc_samples = 1000000,
                          std::uint64_t seed = 0x5eed5eedULL);

}  // namespace gsscm
