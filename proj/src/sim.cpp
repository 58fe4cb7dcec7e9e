#include "gsscm/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>

#include "gsscm/csv.hpp"
#include "gsscm/errors.hpp"
#include "gsscm/influence.hpp"
#include "gsscm/parallel.hpp"
#include "gsscm/rng.hpp"

namespace gsscm {

Vector setting_eigenvalues(EigenSetting setting, int p) {
    Vector values(p);
    for (int j = 0; j < p; ++j) {
        const double base = static_cast<double>(p - j);
        switch (setting) {
            case EigenSetting::Constant: values[j] = 1.0; break;
            case EigenSetting::Linear: values[j] = base; break;
            case EigenSetting::Quadratic: values[j] = base * base; break;
        }
    }
    return values;
}

void SimConfig::validate() const {
    if (n < p + 1) throw DataError("bad-config", "need n >= p + 1");
    if (replications < 1) throw DataError("bad-config", "replications must be >= 1");
    if (k < 0) throw DataError("bad-config", "k must be >= 0");
    if (settings.empty() || methods.empty() || eps.empty()) {
        throw DataError("bad-config", "settings, methods and eps must be nonempty");
    }
    for (double value : eps) {
        if (value < 0.0 || value >= 0.5) {
            throw DataError("bad-config", "eps must lie in [0, 0.5)");
        }
        if (value > 0.0 && gammas.empty()) {
            throw DataError("bad-config", "contaminated cells need a gamma grid");
        }
    }
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = item.find_last_not_of(" \t");
        items.push_back(item.substr(begin, end - begin + 1));
    }
    return items;
}

double parse_number(const std::string& text, const std::string& key) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw DataError("bad-config", "cannot parse '" + text + "' for key '" + key + "'");
    }
}

bool parse_switch(const std::string& text, const std::string& key) {
    if (text == "on" || text == "true" || text == "1") return true;
    if (text == "off" || text == "false" || text == "0") return false;
    throw DataError("bad-config", "expected on/off for key '" + key + "', got '" + text + "'");
}

}  // namespace

SimConfig parse_study_config(std::istream& input) {
    SimConfig config;
    std::string line;
    int line_number = 0;
    while (std::getline(input, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (eq == std::string::npos) {
            throw DataError("bad-config",
                            "line " + std::to_string(line_number) + " is not 'key = value'");
        }
        auto trim = [](std::string text) {
            const auto begin = text.find_first_not_of(" \t");
            if (begin == std::string::npos) return std::string();
            const auto end = text.find_last_not_of(" \t");
            return text.substr(begin, end - begin + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "n") {
            config.n = static_cast<int>(parse_number(value, key));
        } else if (key == "p") {
            config.p = static_cast<int>(parse_number(value, key));
        } else if (key == "replications") {
            config.replications = static_cast<int>(parse_number(value, key));
        } else if (key == "k") {
            config.k = static_cast<int>(parse_number(value, key));
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(parse_number(value, key));
        } else if (key == "normalize") {
            config.normalize = parse_switch(value, key);
        } else if (key == "settings") {
            config.settings.clear();
            for (const auto& name : split_list(value)) {
                config.settings.push_back(eigen_setting_from_string(name));
            }
        } else if (key == "methods") {
            config.methods.clear();
            for (const auto& name : split_list(value)) {
                config.methods.push_back(radial_method_from_string(name));
            }
        } else if (key == "eps") {
            config.eps.clear();
            for (const auto& item : split_list(value)) {
                config.eps.push_back(parse_number(item, key));
            }
        } else if (key == "gamma") {
            config.gammas.clear();
            for (const auto& item : split_list(value)) {
                config.gammas.push_back(parse_number(item, key));
            }
        } else {
            throw DataError("bad-config", "unknown key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

SimConfig parse_study_config_file(const std::string& path) {
    std::ifstream input(path);
    if (!input) throw DataError("missing-file", "cannot open config '" + path + "'");
    return parse_study_config(input);
}

Matrix generate(int n, const Vector& eigenvalues, double eps, double gamma, std::uint64_t seed,
                int replication) {
    const int p = static_cast<int>(eigenvalues.size());
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(replication)));
    Matrix X(n, p);
    Vector sd = eigenvalues.cwiseSqrt();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) X(i, j) = sd[j] * rng.next_normal();
    }
    const int m = static_cast<int>(std::ceil(eps * n - 1e-9));
    for (int i = n - m; i < n; ++i) {
        X.row(i).setZero();
        X(i, p - 1) = gamma;
    }
    return X;
}

namespace {

double log_det_llt(const Eigen::LLT<Matrix>& llt) {
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

double kldiv(const Matrix& s_hat, const Matrix& sigma) {
    if (s_hat.rows() != s_hat.cols() || sigma.rows() != sigma.cols() ||
        s_hat.rows() != sigma.rows()) {
        throw DataError("dimension-mismatch", "kldiv needs two square matrices of equal size");
    }
    const Eigen::LLT<Matrix> sigma_llt(sigma);
    if (sigma_llt.info() != Eigen::Success) {
        throw DataError("not-positive-definite", "reference matrix is not positive definite");
    }
    const Eigen::LLT<Matrix> s_llt(s_hat);
    if (s_llt.info() != Eigen::Success) {
        throw DataError("not-positive-definite", "estimate is not positive definite");
    }
    const double trace = sigma_llt.solve(s_hat).trace();
    const double log_det_ratio = log_det_llt(s_llt) - log_det_llt(sigma_llt);
    return trace - log_det_ratio - static_cast<double>(s_hat.rows());
}

double kldivshape(const Matrix& s_hat, const Matrix& sigma) {
    return kldiv(shape_matrix(s_hat), shape_matrix(sigma));
}

namespace {

struct Cell {
    EigenSetting setting;
    double eps;
    double gamma;
};

}  // namespace

std::vector<SimRecord> run_study(const SimConfig& config) {
    config.validate();

    std::vector<Cell> cells;
    for (EigenSetting setting : config.settings) {
        for (double eps : config.eps) {
            if (eps == 0.0) {
                cells.push_back({setting, 0.0, 0.0});
            } else {
                for (double gamma : config.gammas) cells.push_back({setting, eps, gamma});
            }
        }
    }

    const std::size_t n_methods = config.methods.size();
    std::vector<double> factors(n_methods, 1.0);
    if (config.normalize) {
        for (std::size_t mi = 0; mi < n_methods; ++mi) {
            factors[mi] = population_consistency(config.methods[mi], config.p);
        }
    }

    struct Outcome {
        double kl = 0.0;
        double kl_shape = 0.0;
        bool failed = false;
    };
    std::vector<Outcome> outcomes(cells.size() * n_methods *
                                  static_cast<std::size_t>(config.replications));

    parallel_for(config.replications, config.threads, [&](int rep) {
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            const Cell& cell = cells[ci];
            const Vector eigenvalues = setting_eigenvalues(cell.setting, config.p);
            const Matrix sigma = eigenvalues.asDiagonal();
            const Matrix X =
                generate(config.n, eigenvalues, cell.eps, cell.gamma, config.seed, rep);
            for (std::size_t mi = 0; mi < n_methods; ++mi) {
                Outcome& out = outcomes[(ci * n_methods + mi) *
                                            static_cast<std::size_t>(config.replications) +
                                        static_cast<std::size_t>(rep)];
                try {
                    const ScatterEstimate estimate =
                        gsscm(X, config.methods[mi], LocationSpec::kstep_lts(config.k));
                    const Matrix normalized = estimate.matrix / factors[mi];
                    out.kl = kldiv(normalized, sigma);
                    out.kl_shape = kldivshape(normalized, sigma);
                } catch (const std::exception&) {
                    out.failed = true;
                }
            }
        }
    });

    std::vector<SimRecord> records;
    records.reserve(cells.size() * n_methods);
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            SimRecord record;
            record.method = config.methods[mi];
            record.setting = cells[ci].setting;
            record.eps = cells[ci].eps;
            record.gamma = cells[ci].gamma;
            record.replications = config.replications;
            record.seed = config.seed;
            double kl_sum = 0.0, shape_sum = 0.0;
            int used = 0;
            for (int rep = 0; rep < config.replications; ++rep) {
                const Outcome& out =
                    outcomes[(ci * n_methods + mi) * static_cast<std::size_t>(config.replications) +
                             static_cast<std::size_t>(rep)];
                if (out.failed) {
                    ++record.n_fail;
                    continue;
                }
                kl_sum += out.kl;
                shape_sum += out.kl_shape;
                ++used;
            }
            record.mean_kldiv = used > 0 ? kl_sum / used : 0.0;
            record.mean_kldivshape = used > 0 ? shape_sum / used : 0.0;
            records.push_back(record);
        }
    }
    return records;
}

std::string study_csv(const std::vector<SimRecord>& records) {
    std::ostringstream out;
    out << "method,setting,eps,gamma,mean_kldiv,mean_kldivshape,n_fail,replications,seed\n";
    for (const SimRecord& record : records) {
        out << to_string(record.method) << ',' << to_string(record.setting) << ','
            << format_double(record.eps) << ',' << format_double(record.gamma) << ','
            << format_double(record.mean_kldiv) << ',' << format_double(record.mean_kldivshape)
            << ',' << record.n_fail << ',' << record.replications << ',' << record.seed << '\n';
    }
    return out.str();
}

const char* to_string(BreakdownPlacement placement) {
    return placement == BreakdownPlacement::Cluster ? "cluster" : "hull";
}

BreakdownPlacement breakdown_placement_from_string(const std::string& name) {
    if (name == "cluster") return BreakdownPlacement::Cluster;
    if (name == "hull") return BreakdownPlacement::Hull;
    throw DataError("unknown-placement", "no placement named '" + name + "'");
}

BreakdownResult breakdown_experiment(int n, int p, int m, double magnitude, RadialMethod method,
                                     std::uint64_t seed, BreakdownPlacement placement) {
    if (m < 0 || m > n) throw DataError("bad-argument", "need 0 <= m <= n");
    const Matrix clean = generate(n, Vector::Ones(p), 0.0, 0.0, seed, 0);
    const Vector clean_center = kstep_lts(clean, 5).center;

    Matrix contaminated = clean;
    if (placement == BreakdownPlacement::Cluster) {
        for (int i = n - m; i < n; ++i) {
            contaminated.row(i).setZero();
            contaminated(i, p - 1) = magnitude;
        }
    } else {
        // Along a ray outside the convex hull: pairwise separation and the
        // distance to every clean point both scale with the magnitude.
        const double hull_radius = clean.rowwise().norm().maxCoeff() + 1.0;
        for (int i = n - m; i < n; ++i) {
            contaminated.row(i).setZero();
            contaminated(i, p - 1) = magnitude * (hull_radius + (i - (n - m) + 1));
        }
    }

    const ScatterEstimate estimate = gsscm(contaminated, method, LocationSpec::kstep_lts(5));
    BreakdownResult result;
    result.lambda_max = estimate.eigenvalues[0];
    result.lambda_min = estimate.eigenvalues[estimate.eigenvalues.size() - 1];
    result.trace = estimate.matrix.trace();
    result.location_shift = (estimate.location - clean_center).norm();
    return result;
}

}  // namespace gsscm
