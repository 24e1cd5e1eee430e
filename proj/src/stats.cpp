#include "corpuslens/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "corpuslens/errors.hpp"
#include "corpuslens/util.hpp"

namespace corpuslens::stats {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

std::vector<std::size_t> sort_order(std::span<const double> values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        return a < b;
    });
    return idx;
}

// Regularized lower incomplete gamma P(a, x) by series expansion.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz continued fraction.
double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double normal_sf(double z) { return 0.5 * std::erfc(z / kSqrt2); }

double chisq_sf(double x, double df) {
    if (x <= 0.0) return 1.0;
    const double a = 0.5 * df;
    const double hx = 0.5 * x;
    if (hx < a + 1.0) return 1.0 - gamma_p_series(a, hx);
    return gamma_q_contfrac(a, hx);
}

double kolmogorov_q(double lambda) {
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    double prev = 0.0;
    for (int j = 1; j <= 200; ++j) {
        const double term = sign * std::exp(-2.0 * lambda * lambda * j * j);
        sum += term;
        if (std::fabs(term) < 1e-16 && std::fabs(prev) < 1e-16) break;
        prev = term;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

std::vector<double> midranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<double> ranks(n, 0.0);
    const auto idx = sort_order(values);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
        // positions i..j (0-based) share rank ((i+1) + (j+1)) / 2
        const double r = 0.5 * static_cast<double>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

TieInfo tie_stats(std::span<const double> values) {
    TieInfo info;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const std::size_t t = j - i + 1;
        if (t >= 2) {
            ++info.groups;
            info.max_group = std::max(info.max_group, t);
            const double td = static_cast<double>(t);
            info.correction += td * td * td - td;
        }
        i = j + 1;
    }
    return info;
}

namespace {

// Sum of x's midranks within the pooled (x ++ y) sample.
double pooled_rank_sum_x(std::span<const double> x, std::span<const double> y,
                         TieInfo* ties_out) {
    std::vector<double> pooled;
    pooled.reserve(x.size() + y.size());
    pooled.insert(pooled.end(), x.begin(), x.end());
    pooled.insert(pooled.end(), y.begin(), y.end());
    if (ties_out != nullptr) *ties_out = tie_stats(pooled);
    const auto ranks = midranks(pooled);
    double r1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) r1 += ranks[i];
    return r1;
}

}  // namespace

TestResult mann_whitney_u(std::span<const double> x, std::span<const double> y, bool continuity) {
    if (x.empty() || y.empty()) throw DataError("mann_whitney_u: both samples must be nonempty");
    const double n1 = static_cast<double>(x.size());
    const double n2 = static_cast<double>(y.size());
    const double n = n1 + n2;

    TestResult res;
    res.method = "mann_whitney_u";
    res.n = {x.size(), y.size()};
    const double r1 = pooled_rank_sum_x(x, y, &res.ties);
    const double u = r1 - n1 * (n1 + 1.0) / 2.0;
    res.statistic = u;
    res.effect_size = (2.0 * u - n1 * n2) / (n1 * n2);  // Cliff's delta

    const double mu = n1 * n2 / 2.0;
    const double tie_term = (n > 1.0) ? res.ties.correction / (n * (n - 1.0)) : 0.0;
    const double sigma2 = n1 * n2 / 12.0 * ((n + 1.0) - tie_term);
    if (sigma2 <= 0.0) {
        // every pooled value identical
        res.p_value = 1.0;
        res.degenerate = true;
        return res;
    }
    double dev = std::fabs(u - mu);
    if (continuity) dev = std::max(0.0, dev - 0.5);
    const double z = dev / std::sqrt(sigma2);
    res.p_value = std::min(1.0, 2.0 * normal_sf(z));
    return res;
}

TestResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw DataError("ks_two_sample: both samples must be nonempty");
    std::vector<double> xs(x.begin(), x.end());
    std::vector<double> ys(y.begin(), y.end());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const double n1 = static_cast<double>(xs.size());
    const double n2 = static_cast<double>(ys.size());

    double d = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < xs.size() && j < ys.size()) {
        const double v = std::min(xs[i], ys[j]);
        while (i < xs.size() && xs[i] == v) ++i;
        while (j < ys.size() && ys[j] == v) ++j;
        const double diff = std::fabs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2);
        d = std::max(d, diff);
    }
    // the remaining tail of either sample only shrinks |F1 - F2| toward 0 at +inf,
    // except the step up to 1 on the exhausted side, already covered by diff above
    if (i < xs.size() || j < ys.size()) {
        const double diff = std::fabs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2);
        d = std::max(d, diff);
    }

    TestResult res;
    res.method = "ks_two_sample";
    res.n = {xs.size(), ys.size()};
    res.statistic = d;
    const double ne = n1 * n2 / (n1 + n2);
    const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    res.p_value = kolmogorov_q(lambda);
    return res;
}

double cliffs_delta(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw DataError("cliffs_delta: both samples must be nonempty");
    const double n1 = static_cast<double>(x.size());
    const double n2 = static_cast<double>(y.size());
    const double r1 = pooled_rank_sum_x(x, y, nullptr);
    const double u = r1 - n1 * (n1 + 1.0) / 2.0;
    return (2.0 * u - n1 * n2) / (n1 * n2);
}

namespace {

struct SignedRanks {
    std::vector<double> ranks;  // midranks of |d| over the ranked set
    std::vector<int> signs;     // matching sign of d
    std::size_t n_zero = 0;
    TieInfo ties;
};

SignedRanks signed_ranks(std::span<const double> diffs, ZeroPolicy zeros) {
    SignedRanks out;
    std::vector<double> absd;
    std::vector<int> sign;
    for (double d : diffs) {
        if (d == 0.0) {
            ++out.n_zero;
            if (zeros == ZeroPolicy::Pratt) {
                absd.push_back(0.0);
                sign.push_back(0);
            }
            continue;
        }
        absd.push_back(std::fabs(d));
        sign.push_back(d > 0.0 ? 1 : -1);
    }
    out.ties = tie_stats(absd);
    out.ranks = midranks(absd);
    out.signs = std::move(sign);
    return out;
}

// Exact two-sided sign-flip p-value. Ranks are midranks of |d|; works on the
// doubled ranks so every sum is an integer.
double wilcoxon_exact_p(const std::vector<double>& ranks, double t_plus) {
    const std::size_t n = ranks.size();
    std::vector<long long> r2(n);
    long long s2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        r2[i] = std::llround(2.0 * ranks[i]);
        s2 += r2[i];
    }
    // distribution of 2*T+ over all 2^n sign assignments
    std::vector<double> count(static_cast<std::size_t>(s2) + 1, 0.0);
    count[0] = 1.0;
    long long reach = 0;
    for (std::size_t i = 0; i < n; ++i) {
        reach += r2[i];
        for (long long t = reach; t >= r2[i]; --t) {
            count[static_cast<std::size_t>(t)] += count[static_cast<std::size_t>(t - r2[i])];
        }
    }
    const double center2 = static_cast<double>(s2) / 2.0;  // mean of the doubled statistic
    const double dev = std::fabs(2.0 * t_plus - center2);
    double hits = 0.0;
    double total = 0.0;
    for (long long t = 0; t <= s2; ++t) {
        const double c = count[static_cast<std::size_t>(t)];
        total += c;
        if (std::fabs(static_cast<double>(t) - center2) + 1e-9 >= dev) hits += c;
    }
    return hits / total;
}

}  // namespace

TestResult wilcoxon_signed_rank_diffs(std::span<const double> diffs, ZeroPolicy zeros,
                                      bool continuity) {
    const auto sr = signed_ranks(diffs, zeros);
    const std::size_t n = sr.ranks.size();
    double t_plus = 0.0;
    double t_minus = 0.0;
    std::size_t n_nonzero = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (sr.signs[i] > 0) t_plus += sr.ranks[i];
        if (sr.signs[i] < 0) t_minus += sr.ranks[i];
        if (sr.signs[i] != 0) ++n_nonzero;
    }
    if (n_nonzero == 0) throw NumericError("wilcoxon: degenerate: no nonzero differences");

    TestResult res;
    res.method = "wilcoxon_signed_rank";
    res.n = {diffs.size()};
    res.ties = sr.ties;
    res.statistic = std::min(t_plus, t_minus);

    std::string mode;
    if (zeros == ZeroPolicy::Drop && n <= 25) {
        res.p_value = wilcoxon_exact_p(sr.ranks, t_plus);
        mode = "exact";
    } else {
        const double nd = static_cast<double>(n);
        double mu = nd * (nd + 1.0) / 4.0;
        // tie correction over the ranks that carry sign (zeros' ranks are
        // removed wholesale by the Pratt adjustment below)
        std::vector<double> signed_rank_values;
        signed_rank_values.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (sr.signs[i] != 0) signed_rank_values.push_back(sr.ranks[i]);
        }
        const double tie_corr = tie_stats(signed_rank_values).correction;
        double sigma2 = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_corr / 48.0;
        if (zeros == ZeroPolicy::Pratt && sr.n_zero > 0) {
            const double n0 = static_cast<double>(sr.n_zero);
            mu -= n0 * (n0 + 1.0) / 4.0;
            sigma2 -= n0 * (n0 + 1.0) * (2.0 * n0 + 1.0) / 24.0;
        }
        if (sigma2 <= 0.0) {
            res.p_value = 1.0;
            res.degenerate = true;
            mode = "normal";
        } else {
            double dev = std::fabs(t_plus - mu);
            if (continuity) dev = std::max(0.0, dev - 0.5);
            res.p_value = std::min(1.0, 2.0 * normal_sf(dev / std::sqrt(sigma2)));
            mode = "normal";
        }
    }
    res.notes = "t_plus=" + util::format_full(t_plus) + ";t_minus=" + util::format_full(t_minus) +
                ";n_zero=" + std::to_string(sr.n_zero) + ";mode=" + mode;
    return res;
}

TestResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y,
                                ZeroPolicy zeros, bool continuity) {
    if (x.size() != y.size()) throw DataError("wilcoxon: paired samples differ in length");
    std::vector<double> diffs(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) diffs[i] = x[i] - y[i];
    return wilcoxon_signed_rank_diffs(diffs, zeros, continuity);
}

double kruskal_eta_squared(double h, std::size_t k, std::size_t n_total) {
    if (n_total <= k) throw NumericError("kruskal_eta_squared: N must exceed k");
    return (h - static_cast<double>(k) + 1.0) / (static_cast<double>(n_total) - static_cast<double>(k));
}

TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw DataError("kruskal_wallis: need at least 2 groups");
    for (const auto& g : groups) {
        if (g.empty()) throw DataError("kruskal_wallis: empty group");
    }
    std::vector<double> pooled;
    for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
    const double n = static_cast<double>(pooled.size());
    const std::size_t k = groups.size();

    TestResult res;
    res.method = "kruskal_wallis";
    for (const auto& g : groups) res.n.push_back(g.size());
    res.ties = tie_stats(pooled);

    const auto ranks = midranks(pooled);
    double sum_term = 0.0;
    std::size_t offset = 0;
    for (const auto& g : groups) {
        double r = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) r += ranks[offset + i];
        sum_term += r * r / static_cast<double>(g.size());
        offset += g.size();
    }
    const double h_raw = 12.0 / (n * (n + 1.0)) * sum_term - 3.0 * (n + 1.0);
    const double denom = 1.0 - res.ties.correction / (n * n * n - n);
    if (denom <= 0.0) {
        res.statistic = 0.0;
        res.p_value = 1.0;
        res.degenerate = true;
        if (pooled.size() > k) res.effect_size = kruskal_eta_squared(0.0, k, pooled.size());
        return res;
    }
    res.statistic = h_raw / denom;
    res.p_value = chisq_sf(res.statistic, static_cast<double>(k - 1));
    if (pooled.size() > k) res.effect_size = kruskal_eta_squared(res.statistic, k, pooled.size());
    return res;
}

PairwiseMatrix dunn_posthoc(const std::vector<std::vector<double>>& groups,
                            const std::vector<std::string>& names) {
    if (groups.size() < 3) throw DataError("dunn_posthoc: need at least 3 groups");
    if (names.size() != groups.size()) throw DataError("dunn_posthoc: names/groups mismatch");
    for (const auto& g : groups) {
        if (g.empty()) throw DataError("dunn_posthoc: empty group");
    }
    const std::size_t k = groups.size();
    std::vector<double> pooled;
    for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
    const double n = static_cast<double>(pooled.size());
    const auto ranks = midranks(pooled);
    const auto ties = tie_stats(pooled);

    std::vector<double> mean_rank(k, 0.0);
    std::size_t offset = 0;
    for (std::size_t c = 0; c < k; ++c) {
        double r = 0.0;
        for (std::size_t i = 0; i < groups[c].size(); ++i) r += ranks[offset + i];
        mean_rank[c] = r / static_cast<double>(groups[c].size());
        offset += groups[c].size();
    }
    const double var_factor =
        n * (n + 1.0) / 12.0 - (n > 1.0 ? ties.correction / (12.0 * (n - 1.0)) : 0.0);

    PairwiseMatrix out;
    out.names = names;
    out.z.assign(k, std::vector<double>(k, 0.0));
    out.p_raw.assign(k, std::vector<double>(k, 1.0));
    out.p_adj.assign(k, std::vector<double>(k, 1.0));

    std::vector<double> flat;
    flat.reserve(k * (k - 1) / 2);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            double z = 0.0;
            if (var_factor > 0.0) {
                const double se = std::sqrt(
                    var_factor * (1.0 / static_cast<double>(groups[i].size()) +
                                  1.0 / static_cast<double>(groups[j].size())));
                z = (mean_rank[i] - mean_rank[j]) / se;
            }
            const double p = std::min(1.0, 2.0 * normal_sf(std::fabs(z)));
            out.z[i][j] = z;
            out.z[j][i] = -z;
            out.p_raw[i][j] = p;
            out.p_raw[j][i] = p;
            flat.push_back(p);
        }
    }
    const auto adj = bh_fdr(flat);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            out.p_adj[i][j] = adj[idx];
            out.p_adj[j][i] = adj[idx];
            ++idx;
        }
    }
    return out;
}

std::vector<double> bh_fdr(const std::vector<double>& p_values) {
    const std::size_t m = p_values.size();
    for (double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) throw DataError("bh_fdr: p-values must lie in [0,1]");
    }
    if (m == 0) return {};
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (p_values[a] != p_values[b]) return p_values[a] < p_values[b];
        return a < b;
    });
    std::vector<double> adj(m, 0.0);
    double running = 1.0;
    for (std::size_t r = m; r-- > 0;) {
        const double stepped =
            std::min(1.0, p_values[idx[r]] * static_cast<double>(m) / static_cast<double>(r + 1));
        running = std::min(running, stepped);
        adj[idx[r]] = running;
    }
    return adj;
}

}  // namespace corpuslens::stats
