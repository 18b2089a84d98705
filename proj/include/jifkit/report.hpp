#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jifkit/corpus.hpp"
#include "jifkit/metrics.hpp"
#include "jifkit/ranking.hpp"
#include "jifkit/stability.hpp"

namespace jifkit {

enum class EmitFormat { csv, json, md };

EmitFormat parse_emit_format(std::string_view text);  // throws DataError
std::string to_string(EmitFormat format);

// Human-facing cell values are fixed to three decimals; JSON keeps full
// precision so emitted reports parse back to equal values.
std::string format_value(double value);
std::string format_cell(const std::optional<double>& value);  // "-" when empty

// One column of the stability table. The standard set is eight columns:
// for each source, unfiltered and size-filtered variants of both means.
struct TableConfig {
    CountSource source = CountSource::citations;
    MeanKind mean_kind = MeanKind::arithmetic;
    bool filtered = false;

    bool operator==(const TableConfig&) const = default;
};

std::vector<TableConfig> standard_configs();
std::string config_label(const TableConfig& config, std::size_t min_articles);

struct StabilityCell {
    std::optional<double> average_rho;  // empty renders as a dash
    int pairs_used = 0;

    bool operator==(const StabilityCell&) const = default;
};

struct StabilityRow {
    std::string subcategory;
    std::vector<StabilityCell> cells;  // one per table config

    bool operator==(const StabilityRow&) const = default;
};

struct StabilityTable {
    int year_first = 0;
    int year_last = 0;
    std::size_t min_articles = 0;  // threshold behind the filtered columns
    std::vector<TableConfig> configs;
    std::vector<StabilityRow> rows;

    bool operator==(const StabilityTable&) const = default;
};

// Flags which mean scored higher within one source/filter column pair.
// Derived from the cells whenever needed, never stored, so the flags
// cannot drift from the values they annotate.
struct PairAnnotation {
    CountSource source = CountSource::citations;
    bool filtered = false;
    std::optional<bool> gjif_higher;  // empty when either cell is a dash

    bool operator==(const PairAnnotation&) const = default;
};

// One annotation per (source, filtered) pair of the table's configs, in
// the order the geometric column of each pair appears. gjif_higher is true
// only for a strict win; a tie favours neither mean.
std::vector<PairAnnotation> pair_annotations(const StabilityTable& table,
                                             const StabilityRow& row);

// Runs every (subcategory, config) stability report and collects averaged
// correlations. Subcategories absent from the corpus produce all-dash rows;
// an empty subcategory list is a DataError. Cells are computed
// concurrently; row and column order is fixed by the inputs, so output
// does not depend on scheduling.
StabilityTable build_stability_table(const Corpus& corpus,
                                     std::span<const std::string> subcategories,
                                     int year_first, int year_last,
                                     std::size_t min_articles);

std::string emit_scores(std::span<const JournalScore> scores, EmitFormat format);
std::string emit_ranking(const RankingTable& table, EmitFormat format);
std::string emit_report(const StabilityReport& report, EmitFormat format);

// Stability table with its highest-of-pair annotations: json and csv add
// explicit gjif_higher_than_ajif flags, md bolds the strictly higher cell
// of each pair.
std::string emit_stability(const StabilityTable& table, EmitFormat format);

// Inverses of the json emitters. parse_*(emit_*(x, json)) == x.
std::vector<JournalScore> parse_scores_json(const std::string& text);
RankingTable parse_ranking_json(const std::string& text);
StabilityReport parse_report_json(const std::string& text);
StabilityTable parse_stability_json(const std::string& text);

}  // namespace jifkit
