#include "gsscm/location.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gsscm/errors.hpp"

namespace gsscm {

namespace {

Eigen::Index lts_h(Eigen::Index n) { return (n + 1) / 2; }

std::vector<int> nearest_h_indices(const Matrix& X, const Vector& center, Eigen::Index h) {
    const Eigen::Index n = X.rows();
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        dist[static_cast<std::size_t>(i)] = (X.row(i).transpose() - center).norm();
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (dist[a] != dist[b]) return dist[a] < dist[b];
        return a < b;
    });
    order.resize(static_cast<std::size_t>(h));
    return order;
}

}  // namespace

LocationEstimate spatial_median(const Matrix& X, double tol, int max_iter) {
    const Eigen::Index n = X.rows();
    if (n == 0) throw DataError("empty-input", "spatial median of an empty dataset");
    if (tol <= 0.0) throw DataError("bad-tolerance", "tol must be positive");

    const auto objective = [&](const Vector& theta) {
        double total = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) total += (X.row(i).transpose() - theta).norm();
        return total;
    };

    Vector center = X.colwise().mean();
    if (n == 1) return {center, 0, 0.0};

    const double scale = std::max(1.0, (X.rowwise() - center.transpose()).rowwise().norm().maxCoeff());
    const double snap = 1e-13 * scale;

    for (int iter = 1; iter <= max_iter; ++iter) {
        Vector weighted_sum = Vector::Zero(X.cols());
        Vector gradient = Vector::Zero(X.cols());  // negative gradient of the non-coincident part
        double weight_total = 0.0;
        int multiplicity = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const Vector diff = X.row(i).transpose() - center;
            const double d = diff.norm();
            if (d <= snap) {
                ++multiplicity;
                continue;
            }
            weighted_sum += X.row(i).transpose() / d;
            gradient += diff / d;
            weight_total += 1.0 / d;
        }

        Vector next;
        if (multiplicity > 0) {
            const double grad_norm = gradient.norm();
            if (grad_norm <= static_cast<double>(multiplicity)) {
                return {center, iter, objective(center)};  // current data point is optimal
            }
            // Vardi-Zhang: damp the Weiszfeld target toward the coincident point.
            const Vector target = weighted_sum / weight_total;
            const double pull = std::min(1.0, static_cast<double>(multiplicity) / grad_norm);
            next = (1.0 - pull) * target + pull * center;
        } else {
            next = weighted_sum / weight_total;
        }

        const double step = (next - center).norm();
        center = next;
        if (step <= tol * std::max(1.0, center.norm())) {
            return {center, iter, objective(center)};
        }
    }
    throw ConvergenceError("spatial median did not converge in " + std::to_string(max_iter) +
                               " iterations",
                           center, max_iter);
}

Vector c_step(const Matrix& X, const Vector& t_prev) {
    const Eigen::Index n = X.rows();
    if (n == 0) throw DataError("empty-input", "C-step on an empty dataset");
    const auto subset = nearest_h_indices(X, t_prev, lts_h(n));
    Vector mean = Vector::Zero(X.cols());
    for (int idx : subset) mean += X.row(idx).transpose();
    return mean / static_cast<double>(subset.size());
}

double lts_objective(const Matrix& X, const Vector& center) {
    const Eigen::Index n = X.rows();
    const Eigen::Index h = lts_h(n);
    std::vector<double> sq(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        sq[static_cast<std::size_t>(i)] = (X.row(i).transpose() - center).squaredNorm();
    }
    std::nth_element(sq.begin(), sq.begin() + (h - 1), sq.end());
    double total = 0.0;
    for (Eigen::Index i = 0; i < h; ++i) total += sq[static_cast<std::size_t>(i)];
    return total;
}

LocationEstimate kstep_lts(const Matrix& X, int k, double tol, int max_iter) {
    const LocationEstimate start = spatial_median(X, tol, max_iter);
    Vector center = start.center;
    const Eigen::Index h = lts_h(X.rows());

    int steps = 0;
    if (k == kIterateUntilConvergence) {
        std::vector<int> prev;
        // The objective strictly decreases until the subset repeats, so this
        // terminates; the cap only guards degenerate tie cycles.
        for (int iter = 0; iter < 10000; ++iter) {
            auto subset = nearest_h_indices(X, center, h);
            if (subset == prev) break;
            Vector mean = Vector::Zero(X.cols());
            for (int idx : subset) mean += X.row(idx).transpose();
            center = mean / static_cast<double>(h);
            prev = std::move(subset);
            ++steps;
        }
    } else {
        if (k < 0) throw DataError("bad-argument", "k must be >= 0");
        for (int j = 0; j < k; ++j) {
            center = c_step(X, center);
            ++steps;
        }
    }
    return {center, steps, lts_objective(X, center)};
}

}  // namespace gsscm
