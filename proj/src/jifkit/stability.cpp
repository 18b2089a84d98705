#include "jifkit/stability.hpp"

#include <algorithm>
#include <cmath>

#include "jifkit/errors.hpp"
#include "jifkit/metrics.hpp"
#include "jifkit/ranking.hpp"

namespace jifkit {
namespace {

// Impact values of the given journals in one year, aligned with `journals`.
// Only doc_type == article records enter the counts.
std::vector<double> year_values(const Corpus& corpus, const std::string& subcategory,
                                int year, std::span<const std::string> journals,
                                const PairConfig& config) {
    std::vector<double> values;
    values.reserve(journals.size());
    for (const auto& journal : journals) {
        const auto* indices = corpus.group(subcategory, year, journal);
        std::vector<std::int64_t> counts;
        if (indices) {
            for (const auto i : *indices) {
                const auto& r = corpus.records()[i];
                if (r.doc_type == DocType::article)
                    counts.push_back(r.count_for(config.source));
            }
        }
        values.push_back(config.mean_kind == MeanKind::arithmetic
                             ? arithmetic_jif(counts)
                             : geometric_jif(counts));
    }
    return values;
}

}  // namespace

double spearman_rho(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw DataError("undefined correlation: length mismatch");
    if (x.size() < 3)
        throw DataError("undefined correlation: fewer than 3 points");

    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    const auto n = static_cast<double>(x.size());

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        mean_x += rx[i];
        mean_y += ry[i];
    }
    mean_x /= n;
    mean_y /= n;

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mean_x;
        const double dy = ry[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DataError("undefined correlation: zero rank variance");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<std::string> journals_in_both_years(const Corpus& corpus,
                                                const std::string& subcategory,
                                                int year_a, int year_b,
                                                std::size_t min_articles) {
    const std::size_t threshold = std::max<std::size_t>(min_articles, 1);
    std::vector<std::string> out;
    for (const auto& journal : corpus.journals(subcategory, year_a)) {
        if (corpus.article_count(subcategory, year_a, journal) >= threshold &&
            corpus.article_count(subcategory, year_b, journal) >= threshold)
            out.push_back(journal);
    }
    return out;  // journals() iterates an ordered map, so this is sorted
}

PairCorrelation consecutive_pair(const Corpus& corpus, const std::string& subcategory,
                                 int year, const PairConfig& config) {
    PairCorrelation pair;
    pair.subcategory = subcategory;
    pair.year_a = year;
    pair.year_b = year + 1;
    pair.source = config.source;
    pair.mean_kind = config.mean_kind;
    pair.filtered = config.min_articles > 0;
    pair.min_articles = config.min_articles;

    const auto common = journals_in_both_years(corpus, subcategory, year, year + 1,
                                               config.min_articles);
    pair.common_journals = common.size();
    if (common.size() < 3) {
        pair.skipped = true;
        pair.skip_reason = "fewer than 3 common journals";
        return pair;
    }

    const auto x = year_values(corpus, subcategory, year, common, config);
    const auto y = year_values(corpus, subcategory, year + 1, common, config);
    try {
        pair.rho = spearman_rho(x, y);
    } catch (const DataError&) {
        pair.skipped = true;
        pair.skip_reason = "zero rank variance";
    }
    return pair;
}

StabilityReport stability_report(const Corpus& corpus, const std::string& subcategory,
                                 int year_first, int year_last,
                                 const PairConfig& config) {
    if (year_last < year_first + 1)
        throw DataError("year range too narrow: " + std::to_string(year_first) + ":" +
                        std::to_string(year_last));

    StabilityReport report;
    report.subcategory = subcategory;
    report.source = config.source;
    report.mean_kind = config.mean_kind;
    report.filtered = config.min_articles > 0;
    report.min_articles = config.min_articles;
    report.year_first = year_first;
    report.year_last = year_last;

    double rho_sum = 0.0;
    for (int year = year_first; year < year_last; ++year) {
        auto pair = consecutive_pair(corpus, subcategory, year, config);
        if (pair.skipped) {
            ++report.pairs_skipped;
        } else {
            ++report.pairs_used;
            rho_sum += *pair.rho;
        }
        report.pairs.push_back(std::move(pair));
    }
    if (report.pairs_used > 0)
        report.average_rho = rho_sum / static_cast<double>(report.pairs_used);
    return report;
}

}  // namespace jifkit
