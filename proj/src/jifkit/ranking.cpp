#include "jifkit/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "jifkit/errors.hpp"

namespace jifkit {

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(values.size(), 0.0);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        // positions i+1 .. j+1 (1-based) share their mean rank
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

RankingTable rank_journals(std::span<const JournalScore> scores,
                           std::size_t min_articles) {
    if (scores.empty()) throw DataError("empty scores");

    const auto& first = scores.front();
    std::unordered_set<std::string> seen;
    seen.reserve(scores.size());
    for (const auto& s : scores) {
        if (s.subcategory != first.subcategory || s.year != first.year ||
            s.source != first.source || s.mean_kind != first.mean_kind)
            throw DataError("inconsistent scores: " + s.journal_id);
        if (!seen.insert(s.journal_id).second)
            throw DataError("duplicate journal_id: " + s.journal_id);
    }

    RankingTable table;
    table.subcategory = first.subcategory;
    table.year = first.year;
    table.source = first.source;
    table.mean_kind = first.mean_kind;
    table.min_articles = min_articles;

    for (const auto& s : scores) {
        if (s.article_count < min_articles) continue;
        table.entries.push_back({s.journal_id, s.value, s.article_count, 0.0});
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const RankingEntry& a, const RankingEntry& b) {
                  if (a.value != b.value) return a.value > b.value;
                  return a.journal_id < b.journal_id;
              });

    // rank 1 = highest value; a run of equal values shares its mean position
    std::size_t i = 0;
    while (i < table.entries.size()) {
        std::size_t j = i;
        while (j + 1 < table.entries.size() &&
               table.entries[j + 1].value == table.entries[i].value)
            ++j;
        const double rank =
            (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) table.entries[k].rank = rank;
        i = j + 1;
    }
    return table;
}

}  // namespace jifkit
