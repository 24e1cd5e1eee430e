#ifndef CORPUSLENS_STATS_HPP
#define CORPUSLENS_STATS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace corpuslens::stats {

// Summary of tie structure on the pooled sample.
struct TieInfo {
    std::size_t groups = 0;     // tie groups with multiplicity >= 2
    std::size_t max_group = 0;  // largest multiplicity
    double correction = 0.0;    // sum over groups of (t^3 - t)
};

struct TestResult {
    std::string method;
    double statistic = 0.0;
    double p_value = 1.0;
    std::optional<double> effect_size;  // Cliff's delta or eta^2, depending on method
    std::vector<std::size_t> n;         // per-sample sizes
    TieInfo ties;
    bool degenerate = false;
    std::string notes;
};

struct PairwiseMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> z;      // signed Dunn z statistics
    std::vector<std::vector<double>> p_raw;  // two-sided, unadjusted
    std::vector<std::vector<double>> p_adj;  // BH-FDR adjusted, diagonal = 1
};

// Midranks (1-based, ties averaged) of `values`, in input order.
std::vector<double> midranks(std::span<const double> values);

// Tie statistics of a sample (multiplicities of equal values).
TieInfo tie_stats(std::span<const double> values);

// U statistic for x (greater-than pairs count ties as 1/2), two-sided normal
// approximation with tie-corrected variance; continuity correction optional.
// effect_size carries Cliff's delta for (x, y).
TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y,
                          bool continuity = true);

// Two-sample Kolmogorov-Smirnov: D plus asymptotic p.
TestResult ks_two_sample(std::span<const double> x, std::span<const double> y);

// (#{x_i > y_j} - #{x_i < y_j}) / (n1*n2), computed via ranks in O(N log N).
double cliffs_delta(std::span<const double> x, std::span<const double> y);

enum class ZeroPolicy { Drop, Pratt };

// Paired signed-rank test on differences x[i] - y[i]. statistic = min(T+, T-).
// Exact sign-flip p for small n (Drop policy, n <= 25 after zero handling),
// tie-corrected normal approximation otherwise. Throws NumericError when every
// difference is zero.
TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y,
                                ZeroPolicy zeros = ZeroPolicy::Drop, bool continuity = true);
TestResult wilcoxon_signed_rank_diffs(std::span<const double> diffs,
                                      ZeroPolicy zeros = ZeroPolicy::Drop,
                                      bool continuity = true);

// Tie-corrected H with chi-square p (k-1 df); effect_size = eta^2.
TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

// (H - k + 1) / (N - k); the convention used for reporting alongside H.
double kruskal_eta_squared(double h, std::size_t k, std::size_t n_total);

// Pairwise Dunn z tests on pooled midranks, BH-FDR adjusted. Requires k >= 3
// and no empty groups.
PairwiseMatrix dunn_posthoc(const std::vector<std::vector<double>>& groups,
                            const std::vector<std::string>& names);

// Benjamini-Hochberg step-up adjustment; output in input order, capped at 1.
std::vector<double> bh_fdr(const std::vector<double>& p_values);

// Distribution tails used above, exposed for reuse in tests.
double normal_sf(double z);                 // P(Z >= z)
double chisq_sf(double x, double df);       // upper tail
double kolmogorov_q(double lambda);         // 2 * sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2)

}  // namespace corpuslens::stats

#endif
