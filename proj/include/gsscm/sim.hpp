#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gsscm/coga.hpp"
#include "gsscm/scatter.hpp"

namespace gsscm {

/// True covariance eigenvalues for a study setting: all ones, (p, ..., 1),
/// or (p^2, ..., 1).
Vector setting_eigenvalues(EigenSetting setting, int p);

struct SimConfig {
    int n = 100;
    int p = 10;
    std::vector<EigenSetting> settings = {EigenSetting::Constant, EigenSetting::Linear,
                                          EigenSetting::Quadratic};
    std::vector<double> eps = {0.0, 0.2, 0.4};
    std::vector<double> gammas = {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
    int replications = 200;
    std::vector<RadialMethod> methods = {RadialMethod::SSCM,  RadialMethod::Winsor,
                                         RadialMethod::Quad,  RadialMethod::Ball,
                                         RadialMethod::Shell, RadialMethod::LR};
    std::uint64_t seed = 42;
    int k = 5;               // C-steps for the location estimate
    bool normalize = true;   // divide estimates by the consistency factor
    int threads = 1;

    void validate() const;
};

/// Flat `key = value` study configuration (comma-separated lists; '#' starts
/// a comment). Unknown keys are rejected.
SimConfig parse_study_config(std::istream& input);
SimConfig parse_study_config_file(const std::string& path);

struct SimRecord {
    RadialMethod method = RadialMethod::SSCM;
    EigenSetting setting = EigenSetting::Constant;
    double eps = 0.0;
    double gamma = 0.0;
    double mean_kldiv = 0.0;
    double mean_kldivshape = 0.0;
    int n_fail = 0;
    int replications = 0;
    std::uint64_t seed = 0;
};

/// n draws from N(0, diag(eigenvalues)) with the last ceil(eps*n) rows
/// replaced by the point (0, ..., 0, gamma). Bit-identical for a given
/// (seed, replication) regardless of threading.
Matrix generate(int n, const Vector& eigenvalues, double eps, double gamma, std::uint64_t seed,
                int replication);

/// Gaussian Kullback-Leibler divergence
/// trace(S sigma^-1) - log det(S sigma^-1) - p; both arguments must be
/// positive definite.
double kldiv(const Matrix& s_hat, const Matrix& sigma);

/// kldiv of the determinant-one shape components; invariant to rescaling
/// either argument.
double kldivshape(const Matrix& s_hat, const Matrix& sigma);

/// Full study sweep. Replications are independent tasks sharing common
/// random numbers across methods and cells; per-replication estimator
/// failures are excluded from the means and counted in n_fail. Records come
/// back in canonical grid order (method, setting, eps, gamma as configured).
std::vector<SimRecord> run_study(const SimConfig& config);

/// CSV with columns
/// method,setting,eps,gamma,mean_kldiv,mean_kldivshape,n_fail,replications,seed.
std::string study_csv(const std::vector<SimRecord>& records);

/// How replaced observations are positioned in the breakdown experiment:
/// all on one far point (0,...,0,magnitude), or spread along a ray outside
/// the convex hull at magnitude*(R+j) with pairwise gaps >= magnitude.
enum class BreakdownPlacement { Cluster, Hull };

const char* to_string(BreakdownPlacement placement);
BreakdownPlacement breakdown_placement_from_string(const std::string& name);

struct BreakdownResult {
    double lambda_max = 0.0;
    double lambda_min = 0.0;
    double trace = 0.0;
    double location_shift = 0.0;  // ||T_k(contaminated) - T_k(clean)||
};

/// Replace m points of a clean N(0, I_p) sample and report the eigenvalue
/// extremes, trace, and location shift of the contaminated estimate.
BreakdownResult breakdown_experiment(int n, int p, int m, double magnitude, RadialMethod method,
                                     std::uint64_t seed,
                                     BreakdownPlacement placement = BreakdownPlacement::Cluster);

}  // namespace gsscm
