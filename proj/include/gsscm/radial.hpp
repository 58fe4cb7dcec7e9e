#pragma once

#include <string>
#include <vector>

namespace gsscm {

/// Radial functions selecting how a centered observation is reweighted as a
/// function of its Euclidean distance from the center. Classical keeps every
/// point as is, SSCM projects onto the unit sphere, the remaining five take
/// values in [0, 1] and are driven by the order-statistic cutoffs below.
enum class RadialMethod { Classical, SSCM, Winsor, Quad, Ball, Shell, LR };

const char* to_string(RadialMethod method);
RadialMethod radial_method_from_string(const std::string& name);

/// All seven methods, in canonical order.
inline constexpr RadialMethod kAllMethods[] = {
    RadialMethod::Classical, RadialMethod::SSCM, RadialMethod::Winsor, RadialMethod::Quad,
    RadialMethod::Ball,      RadialMethod::Shell, RadialMethod::LR};

/// The five cutoff-based methods (everything except Classical and SSCM).
inline constexpr RadialMethod kCutoffMethods[] = {RadialMethod::Winsor, RadialMethod::Quad,
                                                  RadialMethod::Ball, RadialMethod::Shell,
                                                  RadialMethod::LR};

bool uses_cutoffs(RadialMethod method);

/// Distance thresholds obtained from hmed/hmad of the 2/3 powers of the
/// distances (Wilson-Hilferty scale), transformed back by the 3/2 power.
/// Always ordered 0 <= q1 <= q2 <= q3 <= q3star, and q2 equals hmed of the
/// raw distances.
struct Cutoffs {
    double q1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;
    double q3star = 0.0;
};

/// h-th order statistic with h = floor((n+p+1)/2); a median variant whose
/// rank is shifted upward with the dimension p.
///
/// Throws DataError("empty-input") for n = 0 and
/// DataError("dimension-exceeds-sample") when h > n (i.e. p > n).
double hmed(std::vector<double> values, int p);

/// hmed of the absolute deviations from hmed.
double hmad(const std::vector<double>& values, int p);

/// Cutoffs from nonnegative distances. The q1 base is clamped at zero when
/// hmad exceeds hmed on the transformed scale.
Cutoffs compute_cutoffs(const std::vector<double>& distances, int p);

/// Radial weight xi(r). SSCM at r = 0 returns 0 (a point sitting exactly on
/// the center contributes nothing). Boundary membership follows the piecewise
/// definitions literally: r <= q2 keeps weight 1 for Winsor/Quad/Ball/LR, the
/// Shell window is [q1, q3] inclusive.
double xi(RadialMethod method, double r, const Cutoffs& cutoffs);

}  // namespace gsscm
