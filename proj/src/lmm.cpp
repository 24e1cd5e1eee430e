#include "corpuslens/lmm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <tuple>
#include <sstream>

#include "corpuslens/errors.hpp"
#include "corpuslens/util.hpp"

namespace corpuslens::lmm {

namespace {

constexpr double kTwoPi = 6.283185307179586;

// Sufficient statistics that make one profile evaluation O(cities * p^2).
struct Precomputed {
    std::size_t n = 0;
    std::size_t p = 0;
    Eigen::MatrixXd xtx;              // X^T X
    Eigen::VectorXd xty;              // X^T y
    double yty = 0.0;
    std::vector<Eigen::VectorXd> sx;  // per city: column sums of X
    std::vector<double> sy;           // per city: sum of y
    std::vector<std::size_t> m;       // per city: observation count
};

// Design row for observation i: intercept plus unit dummies (reference level
// dropped). p = n_units.
void fill_row(Eigen::VectorXd& row, std::int32_t unit, std::size_t p) {
    row.setZero();
    row(0) = 1.0;
    if (unit > 0) row(static_cast<Eigen::Index>(unit)) = 1.0;
    (void)p;
}

Precomputed precompute(const LmmData& d) {
    Precomputed pc;
    pc.n = d.response.size();
    pc.p = d.unit_names.size();
    const auto p = static_cast<Eigen::Index>(pc.p);
    pc.xtx = Eigen::MatrixXd::Zero(p, p);
    pc.xty = Eigen::VectorXd::Zero(p);
    const std::size_t n_cities = d.city_names.size();
    pc.sx.assign(n_cities, Eigen::VectorXd::Zero(p));
    pc.sy.assign(n_cities, 0.0);
    pc.m.assign(n_cities, 0);

    Eigen::VectorXd row(p);
    for (std::size_t i = 0; i < pc.n; ++i) {
        fill_row(row, d.unit[i], pc.p);
        pc.xtx.noalias() += row * row.transpose();
        pc.xty.noalias() += row * d.response[i];
        pc.yty += d.response[i] * d.response[i];
        const auto c = static_cast<std::size_t>(d.city[i]);
        pc.sx[c] += row;
        pc.sy[c] += d.response[i];
        pc.m[c] += 1;
    }
    return pc;
}

struct ProfileEval {
    double criterion;   // profiled log-likelihood (REML or ML)
    double sigma2_e;    // profiled residual variance
    Eigen::VectorXd beta;
};

ProfileEval evaluate_profile(const Precomputed& pc, const LmmData& d, double lambda, bool reml) {
    const auto p = static_cast<Eigen::Index>(pc.p);
    Eigen::MatrixXd a = pc.xtx;
    Eigen::VectorXd b = pc.xty;
    double quad_y = pc.yty;
    double logdet_w = 0.0;

    for (std::size_t c = 0; c < pc.m.size(); ++c) {
        const double mc = static_cast<double>(pc.m[c]);
        const double g = lambda / (1.0 + lambda * mc);
        logdet_w += std::log1p(lambda * mc);
        if (g != 0.0) {
            a.noalias() -= g * (pc.sx[c] * pc.sx[c].transpose());
            b.noalias() -= g * (pc.sx[c] * pc.sy[c]);
            quad_y -= g * pc.sy[c] * pc.sy[c];
        }
    }

    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success) {
        // with disjoint dummies this only fires when a level carries no data
        std::string msg = "lmm: fixed-effect design is rank deficient (levels:";
        for (const auto& u : d.unit_names) msg += " " + u;
        msg += ")";
        throw NumericError(msg);
    }
    const Eigen::VectorXd beta = llt.solve(b);
    double rss = quad_y - beta.dot(b);
    if (rss < 0.0) rss = 0.0;

    const double n = static_cast<double>(pc.n);
    const double dof = reml ? n - static_cast<double>(pc.p) : n;
    if (dof <= 0.0 || rss <= 0.0) {
        throw NumericError("lmm: residual degrees of freedom or RSS vanished");
    }
    const double sigma2 = rss / dof;

    double logdet_xwx = 0.0;
    for (Eigen::Index i = 0; i < p; ++i) logdet_xwx += 2.0 * std::log(llt.matrixL()(i, i));

    double crit;
    if (reml) {
        crit = -0.5 * (dof * (std::log(kTwoPi * sigma2) + 1.0) + logdet_w + logdet_xwx);
    } else {
        crit = -0.5 * (n * (std::log(kTwoPi * sigma2) + 1.0) + logdet_w);
    }
    return {crit, sigma2, beta};
}

}  // namespace

double profile_criterion(const LmmData& data, double lambda, bool reml) {
    const Precomputed pc = precompute(data);
    return evaluate_profile(pc, data, lambda, reml).criterion;
}

double icc(double var_group, double var_resid) {
    if (var_resid <= 0.0) throw NumericError("icc: residual variance must be positive");
    if (var_group < 0.0) throw NumericError("icc: group variance must be nonnegative");
    return var_group / (var_group + var_resid);
}

LmmData make_lmm_data(const std::vector<double>& response, const std::vector<std::string>& city,
                      const std::vector<std::string>& unit) {
    if (response.size() != city.size() || response.size() != unit.size()) {
        throw DataError("lmm: response/city/unit lengths differ");
    }
    LmmData d;
    std::map<std::string, std::int32_t> city_ids;
    std::map<std::string, std::int32_t> unit_ids;
    for (const auto& u : unit) unit_ids.emplace(u, 0);
    for (const auto& c : city) city_ids.emplace(c, 0);
    std::int32_t next = 0;
    for (auto& [name, id] : unit_ids) {
        id = next++;
        d.unit_names.push_back(name);
    }
    next = 0;
    for (auto& [name, id] : city_ids) {
        id = next++;
        d.city_names.push_back(name);
    }
    // canonical observation order makes the fit independent of input order,
    // bit for bit (fixed summation order in the profile evaluations)
    std::vector<std::size_t> idx(response.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto ka = std::tie(city[a], unit[a], response[a]);
        const auto kb = std::tie(city[b], unit[b], response[b]);
        return ka < kb;
    });
    d.response.reserve(response.size());
    d.city.reserve(response.size());
    d.unit.reserve(response.size());
    for (const std::size_t i : idx) {
        d.response.push_back(response[i]);
        d.city.push_back(city_ids.at(city[i]));
        d.unit.push_back(unit_ids.at(unit[i]));
    }
    return d;
}

LmmData load_lmm_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("lmm: cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError("lmm: empty file " + path.string());
    std::vector<double> y;
    std::vector<std::string> city;
    std::vector<std::string> unit;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::stringstream ss(line);
        std::string a;
        std::string b;
        std::string c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c)) {
            throw DataError("lmm: malformed CSV line " + std::to_string(lineno) + " in " +
                            path.string());
        }
        try {
            y.push_back(std::stod(a));
        } catch (const std::exception&) {
            throw DataError("lmm: non-numeric response at line " + std::to_string(lineno));
        }
        city.push_back(b);
        unit.push_back(c);
    }
    return make_lmm_data(y, city, unit);
}

VarianceComponents fit_random_intercept(const LmmData& data, const FitOptions& opts) {
    if (data.city_names.size() < 2) throw DataError("lmm: need at least 2 cities");
    const Precomputed pc = precompute(data);
    if (pc.n <= pc.p) throw DataError("lmm: more fixed-effect levels than observations");
    if (*std::max_element(pc.m.begin(), pc.m.end()) < 2) {
        throw DataError("lmm: need at least one city with 2+ observations");
    }

    VarianceComponents out;
    out.n_cities = data.city_names.size();
    out.n_obs = pc.n;

    const auto eval_log = [&](double log_lambda) {
        const ProfileEval e = evaluate_profile(pc, data, std::exp(log_lambda), opts.reml);
        out.trace.emplace_back(log_lambda, e.criterion);
        return e.criterion;
    };

    // coarse grid, then golden-section inside the bracketing interval
    const int grid = std::max(opts.grid_points, 5);
    double best_ll = -std::numeric_limits<double>::infinity();
    int best_i = 0;
    const double step = (opts.log_lambda_hi - opts.log_lambda_lo) / static_cast<double>(grid - 1);
    for (int i = 0; i < grid; ++i) {
        const double ll = opts.log_lambda_lo + step * i;
        const double v = eval_log(ll);
        if (v > best_ll) {
            best_ll = v;
            best_i = i;
        }
    }
    double a = opts.log_lambda_lo + step * std::max(0, best_i - 1);
    double b = opts.log_lambda_lo + step * std::min(grid - 1, best_i + 1);

    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = eval_log(x1);
    double f2 = eval_log(x2);
    while (b - a > opts.tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = eval_log(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = eval_log(x1);
        }
    }
    double log_lambda_hat = 0.5 * (a + b);
    // parabolic polish: comparison-free, so the located optimum is stable to
    // well below the golden-section noise floor
    for (const double h : {1e-3, 1e-5}) {
        const double lo = opts.log_lambda_lo;
        const double hi = opts.log_lambda_hi;
        if (log_lambda_hat - h < lo || log_lambda_hat + h > hi) break;
        const double f1 = eval_log(log_lambda_hat - h);
        const double f2 = eval_log(log_lambda_hat);
        const double f3 = eval_log(log_lambda_hat + h);
        const double denom = f1 - 2.0 * f2 + f3;
        if (denom >= 0.0) break;  // not locally concave: keep the bracketed point
        double shift = h * (f1 - f3) / (2.0 * denom);
        shift = std::clamp(shift, -h, h);
        log_lambda_hat = std::clamp(log_lambda_hat + shift, lo, hi);
    }
    out.boundary = log_lambda_hat <= opts.log_lambda_lo + 1e-6 ||
                   std::exp(log_lambda_hat) < 1e-10;

    const double lambda_hat = out.boundary ? 0.0 : std::exp(log_lambda_hat);
    const ProfileEval final_eval = evaluate_profile(pc, data, lambda_hat, opts.reml);
    out.lambda = lambda_hat;
    out.loglik = final_eval.criterion;
    out.var_resid = final_eval.sigma2_e;
    out.var_group = lambda_hat * final_eval.sigma2_e;
    out.icc = out.var_group > 0.0 ? out.var_group / (out.var_group + out.var_resid) : 0.0;
    out.beta.assign(final_eval.beta.data(), final_eval.beta.data() + final_eval.beta.size());
    out.beta_names.push_back("(intercept)");
    for (std::size_t i = 1; i < data.unit_names.size(); ++i) {
        out.beta_names.push_back(data.unit_names[i]);
    }
    out.converged = true;
    return out;
}

}  // namespace corpuslens::lmm
