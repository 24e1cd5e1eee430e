#ifndef CORPUSLENS_LMM_HPP
#define CORPUSLENS_LMM_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace corpuslens::lmm {

// Observations for y = X beta + Z b + e with a single random intercept
// (city) and a categorical fixed effect (unit) plus intercept.
struct LmmData {
    std::vector<double> response;
    std::vector<std::int32_t> city;  // indexes into city_names
    std::vector<std::int32_t> unit;  // indexes into unit_names (sorted; index 0 = reference)
    std::vector<std::string> city_names;
    std::vector<std::string> unit_names;
};

// Builds index tables from raw labels. Unit levels are sorted so the
// lexicographically first level is the dummy-coding reference.
LmmData make_lmm_data(const std::vector<double>& response,
                      const std::vector<std::string>& city,
                      const std::vector<std::string>& unit);

// CSV with header `response,city,unit`.
LmmData load_lmm_csv(const std::filesystem::path& path);

struct FitOptions {
    bool reml = true;             // ML behind the flag
    double log_lambda_lo = -12.0; // search interval for log(var_city/var_resid)
    double log_lambda_hi = 6.0;
    double tol = 1e-10;           // golden-section width on log lambda
    int grid_points = 61;
};

struct VarianceComponents {
    double var_group = 0.0;   // sigma^2 city
    double var_resid = 0.0;   // sigma^2 residual
    double icc = 0.0;
    double lambda = 0.0;      // var_group / var_resid at the optimum
    double loglik = 0.0;      // profiled criterion value at the optimum
    std::vector<double> beta;
    std::vector<std::string> beta_names;
    std::vector<std::pair<double, double>> trace;  // (log lambda, criterion)
    bool converged = false;
    bool boundary = false;    // lambda pinned at the lower end -> var_group reported 0
    std::size_t n_cities = 0;
    std::size_t n_obs = 0;
};

VarianceComponents fit_random_intercept(const LmmData& data, const FitOptions& opts = {});

// Profiled criterion at a fixed lambda; exposed so tests can probe the profile.
double profile_criterion(const LmmData& data, double lambda, bool reml = true);

// var_group / (var_group + var_resid). var_resid must be > 0.
double icc(double var_group, double var_resid);

}  // namespace corpuslens::lmm

#endif
