#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "jifkit/types.hpp"

namespace jifkit {

// One journal-year impact value.
struct JournalScore {
    std::string journal_id;
    std::string subcategory;
    int year = 0;
    CountSource source = CountSource::citations;
    MeanKind mean_kind = MeanKind::arithmetic;
    double value = 0.0;            // >= 0
    std::size_t article_count = 0; // >= 1

    bool operator==(const JournalScore&) const = default;
};

// Mean count per article: (sum c_i) / n. Throws DataError("empty
// journal-year") on an empty vector.
double arithmetic_jif(std::span<const std::int64_t> counts);

// Shifted geometric mean: exp((sum ln(1 + c_i)) / n) - 1. The +1 shift keeps
// the log finite at zero counts; the sum runs in log space (compensated), so
// large journals never overflow a product. Always <= arithmetic_jif on the
// same counts. Throws DataError("empty journal-year") on an empty vector.
double geometric_jif(std::span<const std::int64_t> counts);

// Scores one journal-year group on the selected count field. Absent reader
// counts enter as zero. Throws DataError on an empty group or when records
// disagree on journal/subcategory/year ("inconsistent group").
JournalScore score_journal_year(std::span<const ArticleRecord* const> group,
                                CountSource source, MeanKind mean_kind);

}  // namespace jifkit
