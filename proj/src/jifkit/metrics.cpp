#include "jifkit/metrics.hpp"

#include <cmath>
#include <vector>

#include "jifkit/errors.hpp"

namespace jifkit {
namespace {

// Neumaier compensated sum: keeps the accumulated log-space error well
// below the comparison tolerances even for very long journals.
class CompensatedSum {
public:
    void add(double term) {
        const double t = sum_ + term;
        if (std::abs(sum_) >= std::abs(term))
            comp_ += (sum_ - t) + term;
        else
            comp_ += (term - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace

double arithmetic_jif(std::span<const std::int64_t> counts) {
    if (counts.empty()) throw DataError("empty journal-year");
    std::int64_t sum = 0;  // exact: realistic count sums stay far below 2^63
    for (const auto c : counts) sum += c;
    return static_cast<double>(sum) / static_cast<double>(counts.size());
}

double geometric_jif(std::span<const std::int64_t> counts) {
    if (counts.empty()) throw DataError("empty journal-year");
    CompensatedSum log_sum;
    for (const auto c : counts) log_sum.add(std::log1p(static_cast<double>(c)));
    const double mean_log = log_sum.value() / static_cast<double>(counts.size());
    return std::expm1(mean_log);
}

JournalScore score_journal_year(std::span<const ArticleRecord* const> group,
                                CountSource source, MeanKind mean_kind) {
    if (group.empty()) throw DataError("empty journal-year");

    const auto* first = group.front();
    std::vector<std::int64_t> counts;
    counts.reserve(group.size());
    for (const auto* r : group) {
        if (r->journal_id != first->journal_id ||
            r->subcategory != first->subcategory || r->year != first->year)
            throw DataError("inconsistent group: journal " + first->journal_id);
        counts.push_back(r->count_for(source));
    }

    JournalScore score;
    score.journal_id = first->journal_id;
    score.subcategory = first->subcategory;
    score.year = first->year;
    score.source = source;
    score.mean_kind = mean_kind;
    score.article_count = group.size();
    score.value = mean_kind == MeanKind::arithmetic ? arithmetic_jif(counts)
                                                    : geometric_jif(counts);
    return score;
}

}  // namespace jifkit
