#include "gsscm/influence.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "gsscm/errors.hpp"

namespace gsscm {

namespace {

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

template <typename Fn>
double integrate(Fn&& fn, double a, double b) {
    if (b <= a) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(fn, a, b, 12, 1e-12);
}

}  // namespace

GaussianRadialModel::GaussianRadialModel(int p) : p_(p), norm_squared_(chi_squared_coga(p)) {
    if (p < 1) throw DataError("bad-dimension", "need p >= 1");

    const boost::math::chi_squared_distribution<double> chi2(static_cast<double>(p));
    median_g_ = std::cbrt(boost::math::quantile(chi2, 0.5));

    // Solve G(mu + m) - G(mu - m) = 1/2 for the MAD of G; the left side is
    // increasing in m.
    const auto g_cdf = [&](double t) {
        return t <= 0.0 ? 0.0 : boost::math::cdf(chi2, t * t * t);
    };
    const auto half_mass = [&](double m) {
        return g_cdf(median_g_ + m) - g_cdf(median_g_ - m) - 0.5;
    };
    double lo = 0.0, hi = median_g_;
    while (half_mass(hi) < 0.0) hi *= 2.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (half_mass(mid) < 0.0 ? lo : hi) = mid;
    }
    mad_g_ = 0.5 * (lo + hi);

    const auto back = [](double t) { return t <= 0.0 ? 0.0 : t * std::sqrt(t); };
    cutoffs_.q1 = back(median_g_ - mad_g_);
    cutoffs_.q2 = back(median_g_);
    cutoffs_.q3 = back(median_g_ + mad_g_);
    cutoffs_.q3star = back(median_g_ + 1.4826 * mad_g_);
}

double GaussianRadialModel::density_g(double t) const {
    if (t <= 0.0) return 0.0;
    return norm_squared_.pdf(t * t * t) * 3.0 * t * t;
}

double GaussianRadialModel::radial_density(double r) const {
    if (r <= 0.0) return 0.0;
    const double half_p = 0.5 * static_cast<double>(p_);
    return std::exp((1.0 - half_p) * std::log(2.0) - std::lgamma(half_p) +
                    (p_ - 1.0) * std::log(r) - 0.5 * r * r);
}

double GaussianRadialModel::radial_tail(double r) const {
    if (r <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * static_cast<double>(p_), 0.5 * r * r);
}

double GaussianRadialModel::if_median(double x) const {
    const double density = density_g(median_g_);
    if (density <= 0.0) throw NumericError("singular-if", "zero density at the median of G");
    return sign(x - median_g_) / (2.0 * density);
}

double GaussianRadialModel::if_mad(double x) const {
    const double upper = density_g(median_g_ + mad_g_);
    const double lower = density_g(median_g_ - mad_g_);
    if (upper + lower <= 0.0) {
        throw NumericError("singular-if", "zero density at median(G) +/- mad(G)");
    }
    const double centered = std::abs(x - median_g_);
    return (0.5 * sign(centered - mad_g_) - if_median(x) * (upper - lower)) / (upper + lower);
}

double GaussianRadialModel::consistency(RadialMethod method) const {
    if (method == RadialMethod::Classical) return 1.0;
    if (method == RadialMethod::SSCM) return 1.0 / p_;

    const double r_max = std::sqrt(static_cast<double>(p_)) + 15.0;
    const auto integrand = [&](double r) {
        const double w = xi(method, r, cutoffs_);
        return w * w * r * r * radial_density(r);
    };
    // Split at the cutoff kinks so each panel is smooth.
    const double knots[] = {0.0, cutoffs_.q1, cutoffs_.q2, cutoffs_.q3, cutoffs_.q3star, r_max};
    double total = 0.0;
    for (int i = 0; i + 1 < 6; ++i) {
        total += integrate(integrand, knots[i], std::min(knots[i + 1], r_max));
    }
    return total / static_cast<double>(p_);
}

const GaussianRadialModel& gaussian_model(int p) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussianRadialModel>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[p];
    if (!slot) slot = std::make_unique<GaussianRadialModel>(p);
    return *slot;
}

double population_consistency(RadialMethod method, int p) {
    return gaussian_model(p).consistency(method);
}

CutoffIFs if_cutoffs_at_norm(double z_norm, int p) {
    const GaussianRadialModel& model = gaussian_model(p);
    const double med = model.median_g();
    const double mad = model.mad_g();
    if (med - mad <= 0.0) {
        throw NumericError("singular-if", "median(G) - mad(G) is not positive");
    }
    const double x = std::cbrt(z_norm * z_norm);
    const double med_if = model.if_median(x);
    const double mad_if = model.if_mad(x);

    CutoffIFs result;
    result.if_q1 = 1.5 * std::sqrt(med - mad) * (med_if - mad_if);
    result.if_q2 = 1.5 * std::sqrt(med) * med_if;
    result.if_q3 = 1.5 * std::sqrt(med + mad) * (med_if + mad_if);
    result.if_q3star = 1.5 * std::sqrt(med + 1.4826 * mad) * (med_if + 1.4826 * mad_if);
    return result;
}

CutoffIFs if_cutoffs(const Vector& z, int p) { return if_cutoffs_at_norm(z.norm(), p); }

Matrix if_classical(const Vector& z, const Matrix& sigma) {
    if (sigma.rows() != sigma.cols() || sigma.rows() != z.size()) {
        throw DataError("dimension-mismatch", "z and sigma sizes disagree");
    }
    return z * z.transpose() - sigma;
}

Matrix if_sscm(const Vector& z, int p) {
    if (z.size() != p) throw DataError("dimension-mismatch", "z must have length p");
    const Matrix centered = Matrix::Identity(p, p) / static_cast<double>(p);
    const double norm = z.norm();
    if (norm == 0.0) return -centered;
    const Vector u = z / norm;
    return u * u.transpose() - centered;
}

namespace {

/// Coefficient tau of the identity in the derivative of the population term:
/// d/de integral of g_e g_e^T dF at e = 0 equals tau * I by isotropy.
double correction_coefficient(RadialMethod method, const GaussianRadialModel& model,
                              const CutoffIFs& ifs) {
    const Cutoffs& c = model.cutoffs();
    const double p = static_cast<double>(model.dimension());
    switch (method) {
        case RadialMethod::Classical:
        case RadialMethod::SSCM:
            return 0.0;  // the radial function does not depend on F
        case RadialMethod::Winsor:
            // d(xi^2)/de = 2 q2 IF_q2 / r^2 beyond q2, and r^2 cancels.
            return 2.0 * c.q2 * ifs.if_q2 * model.radial_tail(c.q2) / p;
        case RadialMethod::Quad: {
            const double tail = integrate(
                [&](double r) { return model.radial_density(r) / (r * r); }, c.q2,
                std::sqrt(p) + 15.0);
            return 4.0 * c.q2 * c.q2 * c.q2 * ifs.if_q2 * tail / p;
        }
        case RadialMethod::Ball:
            return ifs.if_q2 * c.q2 * c.q2 * model.radial_density(c.q2) / p;
        case RadialMethod::Shell:
            return (ifs.if_q3 * c.q3 * c.q3 * model.radial_density(c.q3) -
                    ifs.if_q1 * c.q1 * c.q1 * model.radial_density(c.q1)) /
                   p;
        case RadialMethod::LR: {
            if (c.q3star <= c.q2) return 0.0;
            const double span = c.q3star - c.q2;
            const double ramp = integrate(
                [&](double r) {
                    const double weight = (c.q3star - r) / span;
                    const double slope =
                        (ifs.if_q3star * (r - c.q2) + ifs.if_q2 * (c.q3star - r)) / (span * span);
                    return 2.0 * weight * slope * r * r * model.radial_density(r);
                },
                c.q2, c.q3star);
            return ramp / p;
        }
    }
    return 0.0;
}

}  // namespace

IFResult if_gsscm(const Vector& z, RadialMethod method, int p, bool normalize) {
    if (z.size() != p) throw DataError("dimension-mismatch", "z must have length p");

    IFResult result;
    result.z = z;
    result.method = method;

    if (method == RadialMethod::Classical) {
        result.matrix = if_classical(z, Matrix::Identity(p, p));
        return result;  // consistency factor is 1
    }
    if (method == RadialMethod::SSCM) {
        result.matrix = if_sscm(z, p);
        if (normalize) result.matrix *= static_cast<double>(p);
        return result;
    }

    const GaussianRadialModel& model = gaussian_model(p);
    const double z_norm = z.norm();
    const double weight = xi(method, z_norm, model.cutoffs());
    const Vector g = weight * z;
    const CutoffIFs ifs = if_cutoffs_at_norm(z_norm, p);
    const double c = model.consistency(method);
    const double tau = correction_coefficient(method, model, ifs);

    result.matrix = g * g.transpose();
    result.matrix.diagonal().array() += tau - c;
    if (normalize) result.matrix /= c;
    return result;
}

const char* to_string(GridDirection direction) {
    return direction == GridDirection::DiagXY ? "diag_xy" : "axis_x";
}

GridDirection grid_direction_from_string(const std::string& name) {
    if (name == "diag_xy") return GridDirection::DiagXY;
    if (name == "axis_x") return GridDirection::AxisX;
    throw DataError("unknown-direction", "no grid direction named '" + name + "'");
}

std::vector<IFGridRow> if_grid(RadialMethod method, GridDirection direction,
                               const std::vector<double>& z_values, bool normalize) {
    std::vector<IFGridRow> rows;
    rows.reserve(z_values.size());
    for (double z : z_values) {
        Vector point(2);
        if (direction == GridDirection::DiagXY) {
            point << z, z;
        } else {
            point << z, 0.0;
        }
        const IFResult result = if_gsscm(point, method, 2, normalize);
        rows.push_back({z, result.matrix(0, 0), result.matrix(0, 1), result.matrix(1, 1)});
    }
    return rows;
}

}  // namespace gsscm
