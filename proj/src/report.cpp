#include "corpuslens/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "corpuslens/errors.hpp"
#include "corpuslens/text.hpp"
#include "corpuslens/util.hpp"

namespace corpuslens::report {

SummaryRow summarize_group(std::string scope, std::string kind, std::span<const double> compounds,
                           double positive_threshold, double negative_threshold) {
    if (compounds.empty()) throw DataError("summarize_group: empty group " + scope);
    SummaryRow row;
    row.scope = std::move(scope);
    row.kind = std::move(kind);
    row.n = compounds.size();
    double sum = 0.0;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
    for (double c : compounds) {
        sum += c;
        if (c >= positive_threshold) ++n_pos;
        if (c <= negative_threshold) ++n_neg;
    }
    const double n = static_cast<double>(compounds.size());
    row.mean = sum / n;
    double ss = 0.0;
    for (double c : compounds) ss += (c - row.mean) * (c - row.mean);
    row.std_pop = std::sqrt(ss / n);
    row.std_sample = compounds.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    row.pct_positive = 100.0 * static_cast<double>(n_pos) / n;
    row.pct_negative = 100.0 * static_cast<double>(n_neg) / n;
    return row;
}

std::vector<std::pair<std::string, std::size_t>> word_frequencies(
    const std::vector<std::string>& texts, const std::unordered_set<std::string>& stopwords) {
    std::map<std::string, std::size_t> counts;
    for (const auto& t : texts) {
        for (auto& token : text::tokenize(t)) {
            if (text::utf8_length(token) < 2) continue;
            if (stopwords.count(token) > 0) continue;
            ++counts[token];
        }
    }
    std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("stopwords: cannot read " + path.string());
    std::unordered_set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.insert(text::to_lower(line));
    }
    return out;
}

namespace {

// linear interpolation between closest ranks (the common "type 7" rule);
// for even n the median equals the mean of the two middle order statistics
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, n - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

BoxplotStats boxplot_stats(std::span<const double> values) {
    if (values.empty()) throw DataError("boxplot_stats: empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    BoxplotStats box;
    box.q1 = quantile_sorted(sorted, 0.25);
    box.median = quantile_sorted(sorted, 0.5);
    box.q3 = quantile_sorted(sorted, 0.75);
    const double iqr = box.q3 - box.q1;
    const double lo_fence = box.q1 - 1.5 * iqr;
    const double hi_fence = box.q3 + 1.5 * iqr;
    box.whisker_lo = box.q1;
    box.whisker_hi = box.q3;
    for (double v : sorted) {
        if (v >= lo_fence) {
            box.whisker_lo = v;
            break;
        }
    }
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
        if (*it <= hi_fence) {
            box.whisker_hi = *it;
            break;
        }
    }
    for (double v : sorted) {
        if (v < lo_fence || v > hi_fence) ++box.outliers;
    }
    return box;
}

DistributionData distribution_data(std::span<const double> values, int bins) {
    if (values.empty()) throw DataError("distribution_data: empty sample");
    if (bins < 1) throw DataError("distribution_data: bins must be >= 1");
    DistributionData out;
    out.n = values.size();

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        out.ecdf.emplace_back(sorted[i], static_cast<double>(j + 1) / n);
        i = j + 1;
    }

    out.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int b = 0; b <= bins; ++b) {
        out.bin_edges[static_cast<std::size_t>(b)] = -1.0 + 2.0 * b / static_cast<double>(bins);
    }
    out.counts.assign(static_cast<std::size_t>(bins), 0);
    for (double v : sorted) {
        auto idx = static_cast<long>(std::floor((v + 1.0) / 2.0 * bins));
        idx = std::clamp<long>(idx, 0, bins - 1);  // v == 1 lands in the last bin
        ++out.counts[static_cast<std::size_t>(idx)];
    }
    out.box = boxplot_stats(values);
    return out;
}

std::string csv_field(std::string_view raw) {
    const bool needs_quote = raw.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quote) return std::string(raw);
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::string body;
    const auto append_row = [&body](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) body.push_back(',');
            body += csv_field(row[i]);
        }
        body.push_back('\n');
    };
    append_row(header);
    for (const auto& row : rows) append_row(row);
    util::write_file(path, body);
}

}  // namespace corpuslens::report
