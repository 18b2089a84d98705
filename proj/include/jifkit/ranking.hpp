#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "jifkit/metrics.hpp"

namespace jifkit {

struct RankingEntry {
    std::string journal_id;
    double value = 0.0;
    std::size_t article_count = 0;
    double rank = 0.0;  // 1 = highest value; tied values share the average rank
};

// Ordered journals for one (subcategory, year, source, mean_kind, filter)
// tuple. Entries are sorted by value descending with journal_id as the
// secondary key, so the byte layout of emitted tables is reproducible.
struct RankingTable {
    std::string subcategory;
    int year = 0;
    CountSource source = CountSource::citations;
    MeanKind mean_kind = MeanKind::arithmetic;
    std::size_t min_articles = 0;
    std::vector<RankingEntry> entries;
};

// Filters scores to article_count >= min_articles and ranks the rest.
// All scores must share (subcategory, year, source, mean_kind) and have
// unique journal ids; otherwise DataError("inconsistent scores") /
// ("duplicate journal_id"). An empty post-filter table is fine; an empty
// input is DataError("empty scores").
RankingTable rank_journals(std::span<const JournalScore> scores,
                           std::size_t min_articles);

// Fractional average ranks, ascending: rank 1 = smallest value, ties get
// the mean of the positions they span.
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace jifkit
