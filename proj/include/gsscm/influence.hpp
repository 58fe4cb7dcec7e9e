#pragma once

#include <vector>

#include "gsscm/coga.hpp"
#include "gsscm/location.hpp"
#include "gsscm/radial.hpp"

namespace gsscm {

/// Population quantities of the p-variate standard normal model that the
/// influence functions are evaluated at: the median and (unscaled) MAD of
/// G, the law of ||X||^(2/3), and the cutoffs they induce. ||X||^2 follows
/// the chi-squared / gamma-convolution law, which supplies the density of G.
class GaussianRadialModel {
public:
    explicit GaussianRadialModel(int p);

    int dimension() const noexcept { return p_; }
    double median_g() const noexcept { return median_g_; }
    double mad_g() const noexcept { return mad_g_; }
    const Cutoffs& cutoffs() const noexcept { return cutoffs_; }

    /// Density of G at t (zero outside the support).
    double density_g(double t) const;
    /// Density and upper tail of the norm ||X|| itself.
    double radial_density(double r) const;
    double radial_tail(double r) const;

    /// Standard influence functions of the median and of the unscaled MAD of
    /// G, evaluated at a point mass in x (sign(0) = 0 convention).
    double if_median(double x) const;
    double if_mad(double x) const;

    /// E[g_1(X)^2] for the given radial method at the population cutoffs,
    /// by radial quadrature. Exact counterpart of the Monte-Carlo
    /// consistency_factor.
    double consistency(RadialMethod method) const;

private:
    int p_;
    double median_g_ = 0.0;
    double mad_g_ = 0.0;
    Cutoffs cutoffs_;
    CogaDistribution norm_squared_;
};

/// Shared, lazily built model per dimension.
const GaussianRadialModel& gaussian_model(int p);

/// Exact-at-the-model consistency factor (quadrature, no sampling).
double population_consistency(RadialMethod method, int p);

struct CutoffIFs {
    double if_q1 = 0.0;
    double if_q2 = 0.0;
    double if_q3 = 0.0;
    double if_q3star = 0.0;
};

/// Influence of a point mass at z on each of the four distance cutoffs.
CutoffIFs if_cutoffs(const Vector& z, int p);
CutoffIFs if_cutoffs_at_norm(double z_norm, int p);

/// IF of the classical covariance: z z^T - sigma.
Matrix if_classical(const Vector& z, const Matrix& sigma);

/// IF of the spatial sign covariance matrix at N(0, I_p):
/// (z/||z||)(z/||z||)^T - I/p, with the z = 0 limit taken as -I/p.
Matrix if_sscm(const Vector& z, int p);

struct IFResult {
    Vector z;
    Matrix matrix;
    RadialMethod method = RadialMethod::Classical;
};

/// Influence function of the GSSCM functional at F = N(0, I_p):
///   g(z) g(z)^T - c I + tau(||z||) I,
/// where tau collects the derivative of the population term through the
/// cutoffs. The smooth methods integrate the radial correction; the Ball and
/// Shell Dirac terms reduce by isotropy to sphere-surface evaluations
/// IF_Q * Q^2 * f_R(Q) / p at the cutoff radii. With `normalize`, the result
/// is divided by the consistency factor.
IFResult if_gsscm(const Vector& z, RadialMethod method, int p, bool normalize = true);

enum class GridDirection { DiagXY, AxisX };

const char* to_string(GridDirection direction);
GridDirection grid_direction_from_string(const std::string& name);

struct IFGridRow {
    double z = 0.0;
    double s11 = 0.0;
    double s12 = 0.0;
    double s22 = 0.0;
};

/// Bivariate IF profiles with contamination at (z, z) or (z, 0).
std::vector<IFGridRow> if_grid(RadialMethod method, GridDirection direction,
                               const std::vector<double>& z_values, bool normalize = true);

}  // namespace gsscm
