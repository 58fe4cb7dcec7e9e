#include "gsscm/radial.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "gsscm/errors.hpp"

namespace gsscm {

const char* to_string(RadialMethod method) {
    switch (method) {
        case RadialMethod::Classical: return "classical";
        case RadialMethod::SSCM: return "sscm";
        case RadialMethod::Winsor: return "winsor";
        case RadialMethod::Quad: return "quad";
        case RadialMethod::Ball: return "ball";
        case RadialMethod::Shell: return "shell";
        case RadialMethod::LR: return "lr";
    }
    return "unknown";
}

RadialMethod radial_method_from_string(const std::string& name) {
    for (RadialMethod m : kAllMethods) {
        if (name == to_string(m)) return m;
    }
    throw DataError("unknown-method", "no radial method named '" + name + "'");
}

bool uses_cutoffs(RadialMethod method) {
    return method != RadialMethod::Classical && method != RadialMethod::SSCM;
}

namespace {

std::size_t h_rank(std::size_t n, int p) {
    if (n == 0) throw DataError("empty-input", "hmed of an empty sequence");
    if (p < 0) throw DataError("bad-dimension", "negative dimension");
    const std::size_t h = (n + static_cast<std::size_t>(p) + 1) / 2;
    if (h > n) {
        throw DataError("dimension-exceeds-sample",
                        "hmed rank h=" + std::to_string(h) + " exceeds n=" + std::to_string(n));
    }
    return h;
}

}  // namespace

double hmed(std::vector<double> values, int p) {
    const std::size_t h = h_rank(values.size(), p);
    std::nth_element(values.begin(), values.begin() + (h - 1), values.end());
    return values[h - 1];
}

double hmad(const std::vector<double>& values, int p) {
    const double center = hmed(values, p);
    std::vector<double> deviations(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        deviations[i] = std::abs(values[i] - center);
    }
    return hmed(std::move(deviations), p);
}

Cutoffs compute_cutoffs(const std::vector<double>& distances, int p) {
    std::vector<double> transformed(distances.size());
    for (std::size_t i = 0; i < distances.size(); ++i) {
        transformed[i] = std::cbrt(distances[i] * distances[i]);
    }
    const double med = hmed(transformed, p);
    const double mad = hmad(transformed, p);

    const auto back = [](double t) { return t <= 0.0 ? 0.0 : t * std::sqrt(t); };
    Cutoffs cutoffs;
    cutoffs.q1 = back(med - mad);
    cutoffs.q2 = back(med);
    cutoffs.q3 = back(med + mad);
    cutoffs.q3star = back(med + 1.4826 * mad);
    return cutoffs;
}

double xi(RadialMethod method, double r, const Cutoffs& c) {
    switch (method) {
        case RadialMethod::Classical:
            return 1.0;
        case RadialMethod::SSCM:
            return r > 0.0 ? 1.0 / r : 0.0;
        case RadialMethod::Winsor:
            return r <= c.q2 ? 1.0 : c.q2 / r;
        case RadialMethod::Quad:
            return r <= c.q2 ? 1.0 : (c.q2 * c.q2) / (r * r);
        case RadialMethod::Ball:
            return r <= c.q2 ? 1.0 : 0.0;
        case RadialMethod::Shell:
            return (r >= c.q1 && r <= c.q3) ? 1.0 : 0.0;
        case RadialMethod::LR:
            if (r <= c.q2) return 1.0;
            if (r > c.q3star) return 0.0;
            // Degenerate spread (all distances equal) collapses the ramp.
            if (c.q3star <= c.q2) return 0.0;
            return (c.q3star - r) / (c.q3star - c.q2);
    }
    return 0.0;
}

}  // namespace gsscm
