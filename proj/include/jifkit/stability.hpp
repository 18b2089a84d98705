#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jifkit/corpus.hpp"
#include "jifkit/types.hpp"

namespace jifkit {

struct PairConfig {
    CountSource source = CountSource::citations;
    MeanKind mean_kind = MeanKind::arithmetic;
    // 0 = unfiltered. Journals still need at least one article in both
    // years: a journal absent from a year has no impact value at all.
    std::size_t min_articles = 0;
};

// Spearman correlation between the rankings of two consecutive years.
struct PairCorrelation {
    std::string subcategory;
    int year_a = 0;
    int year_b = 0;  // always year_a + 1
    CountSource source = CountSource::citations;
    MeanKind mean_kind = MeanKind::arithmetic;
    bool filtered = false;
    std::size_t min_articles = 0;
    std::size_t common_journals = 0;  // journals meeting the threshold in BOTH years
    std::optional<double> rho;        // present iff not skipped
    bool skipped = false;
    std::string skip_reason;

    bool operator==(const PairCorrelation&) const = default;
};

struct StabilityReport {
    std::string subcategory;
    CountSource source = CountSource::citations;
    MeanKind mean_kind = MeanKind::arithmetic;
    bool filtered = false;
    std::size_t min_articles = 0;
    int year_first = 0;
    int year_last = 0;
    std::vector<PairCorrelation> pairs;
    std::size_t pairs_used = 0;
    std::size_t pairs_skipped = 0;
    std::optional<double> average_rho;  // mean rho over non-skipped pairs

    bool operator==(const StabilityReport&) const = default;
};

// Tie-corrected Spearman: the Pearson correlation of the average-rank
// vectors. The d^2 shortcut is exact only without ties, so it is never used
// here. Throws DataError("undefined correlation ...") when the vectors are
// shorter than 3, of different lengths, or either has zero rank variance.
double spearman_rho(std::span<const double> x, std::span<const double> y);

// Journals with >= max(min_articles, 1) articles in both years, sorted.
std::vector<std::string> journals_in_both_years(const Corpus& corpus,
                                                const std::string& subcategory,
                                                int year_a, int year_b,
                                                std::size_t min_articles);

// Correlates the (year, year+1) impact values of the journals meeting the
// threshold in both years. Degenerate cases (fewer than 3 common journals,
// zero rank variance) come back as skipped pairs, never as errors.
PairCorrelation consecutive_pair(const Corpus& corpus, const std::string& subcategory,
                                 int year, const PairConfig& config);

// One pair per consecutive year couple in [year_first, year_last];
// average_rho over the non-skipped pairs. Throws DataError when the range
// spans fewer than 2 years.
StabilityReport stability_report(const Corpus& corpus, const std::string& subcategory,
                                 int year_first, int year_last,
                                 const PairConfig& config);

}  // namespace jifkit
