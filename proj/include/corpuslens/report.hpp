#ifndef CORPUSLENS_REPORT_HPP
#define CORPUSLENS_REPORT_HPP

#include <filesystem>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace corpuslens::report {

struct SummaryRow {
    std::string scope;  // region, unit or city
    std::string kind;   // "posts" | "comments"
    std::size_t n = 0;
    double mean = 0.0;
    double std_pop = 0.0;     // divisor n
    double std_sample = 0.0;  // divisor n-1 (0 when n == 1)
    double pct_positive = 0.0;
    double pct_negative = 0.0;
};

// Population std by default, sample std emitted alongside; percentages use
// the classify thresholds (boundary inclusive).
SummaryRow summarize_group(std::string scope, std::string kind, std::span<const double> compounds,
                           double positive_threshold = 0.05, double negative_threshold = -0.05);

// Ranked (term, count): normalized tokens, stopword and short-token (<2
// codepoints) removal, descending count with lexicographic tie-break.
std::vector<std::pair<std::string, std::size_t>> word_frequencies(
    const std::vector<std::string>& texts, const std::unordered_set<std::string>& stopwords);

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path);

struct BoxplotStats {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double whisker_lo = 0.0;  // most extreme datum within 1.5*IQR of q1
    double whisker_hi = 0.0;
    std::size_t outliers = 0;
};

struct DistributionData {
    std::vector<std::pair<double, double>> ecdf;  // (value, cumulative fraction) at unique values
    std::vector<double> bin_edges;                // bins+1 edges over [-1, 1]
    std::vector<std::size_t> counts;              // histogram counts, sum == n
    BoxplotStats box;
    std::size_t n = 0;
};

// values must be nonempty and lie in [-1, 1]; bins >= 1.
DistributionData distribution_data(std::span<const double> values, int bins);

BoxplotStats boxplot_stats(std::span<const double> values);

// Byte-deterministic CSV (6-decimal fixed point is the caller's concern via
// util::format_fixed): LF endings, UTF-8, minimal quoting.
std::string csv_field(std::string_view raw);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace corpuslens::report

#endif
