#include "jifkit/report.hpp"

#include <cstdio>
#include <future>
#include <sstream>

#include "json.hpp"

#include "csv.hpp"
#include "jifkit/errors.hpp"

namespace jifkit {
namespace {

using nlohmann::json;

// Full-precision text for data formats; format_value() is the human one.
std::string precise(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

CountSource source_from(const json& v) {
    const auto parsed = parse_count_source(v.get<std::string>());
    if (!parsed) throw DataError("unknown source: " + v.get<std::string>());
    return *parsed;
}

MeanKind mean_from(const json& v) {
    const auto parsed = parse_mean_kind(v.get<std::string>());
    if (!parsed) throw DataError("unknown mean: " + v.get<std::string>());
    return *parsed;
}

json score_to_json(const JournalScore& s) {
    return json{{"journal_id", s.journal_id}, {"subcategory", s.subcategory},
                {"year", s.year},             {"source", to_string(s.source)},
                {"mean", to_string(s.mean_kind)}, {"value", s.value},
                {"article_count", s.article_count}};
}

JournalScore score_from_json(const json& v) {
    JournalScore s;
    s.journal_id = v.at("journal_id").get<std::string>();
    s.subcategory = v.at("subcategory").get<std::string>();
    s.year = v.at("year").get<int>();
    s.source = source_from(v.at("source"));
    s.mean_kind = mean_from(v.at("mean"));
    s.value = v.at("value").get<double>();
    s.article_count = v.at("article_count").get<std::size_t>();
    return s;
}

json pair_to_json(const PairCorrelation& p) {
    json v{{"subcategory", p.subcategory},
           {"year_a", p.year_a},
           {"year_b", p.year_b},
           {"source", to_string(p.source)},
           {"mean", to_string(p.mean_kind)},
           {"filtered", p.filtered},
           {"min_articles", p.min_articles},
           {"common_journals", p.common_journals},
           {"skipped", p.skipped},
           {"skip_reason", p.skip_reason}};
    v["rho"] = p.rho ? json(*p.rho) : json(nullptr);
    return v;
}

PairCorrelation pair_from_json(const json& v) {
    PairCorrelation p;
    p.subcategory = v.at("subcategory").get<std::string>();
    p.year_a = v.at("year_a").get<int>();
    p.year_b = v.at("year_b").get<int>();
    p.source = source_from(v.at("source"));
    p.mean_kind = mean_from(v.at("mean"));
    p.filtered = v.at("filtered").get<bool>();
    p.min_articles = v.at("min_articles").get<std::size_t>();
    p.common_journals = v.at("common_journals").get<std::size_t>();
    if (!v.at("rho").is_null()) p.rho = v.at("rho").get<double>();
    p.skipped = v.at("skipped").get<bool>();
    p.skip_reason = v.at("skip_reason").get<std::string>();
    return p;
}

json report_to_json(const StabilityReport& r) {
    json pairs = json::array();
    for (const auto& p : r.pairs) pairs.push_back(pair_to_json(p));
    json v{{"subcategory", r.subcategory},
           {"source", to_string(r.source)},
           {"mean", to_string(r.mean_kind)},
           {"filtered", r.filtered},
           {"min_articles", r.min_articles},
           {"year_first", r.year_first},
           {"year_last", r.year_last},
           {"pairs", std::move(pairs)},
           {"pairs_used", r.pairs_used},
           {"pairs_skipped", r.pairs_skipped}};
    v["average_rho"] = r.average_rho ? json(*r.average_rho) : json(nullptr);
    return v;
}

json config_to_json(const TableConfig& c) {
    return json{{"source", to_string(c.source)},
                {"mean", to_string(c.mean_kind)},
                {"filtered", c.filtered}};
}

TableConfig config_from_json(const json& v) {
    TableConfig c;
    c.source = source_from(v.at("source"));
    c.mean_kind = mean_from(v.at("mean"));
    c.filtered = v.at("filtered").get<bool>();
    return c;
}

json parse_or_throw(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("invalid json: ") + e.what());
    }
}

struct PairColumns {
    std::size_t arith = 0;
    std::size_t geom = 0;
};

// Matches each geometric column with the arithmetic column of the same
// (source, filtered) variant, in geometric-column order.
std::vector<PairColumns> pair_columns(const std::vector<TableConfig>& configs) {
    std::vector<PairColumns> pairs;
    for (std::size_t g = 0; g < configs.size(); ++g) {
        if (configs[g].mean_kind != MeanKind::geometric) continue;
        for (std::size_t a = 0; a < configs.size(); ++a) {
            if (configs[a].mean_kind != MeanKind::arithmetic) continue;
            if (configs[a].source != configs[g].source ||
                configs[a].filtered != configs[g].filtered)
                continue;
            pairs.push_back({a, g});
            break;
        }
    }
    return pairs;
}

std::string annotation_label(const PairAnnotation& annotation,
                             std::size_t min_articles) {
    auto label = to_string(annotation.source) + " gjif_higher_than_ajif";
    if (annotation.filtered) label += " " + std::to_string(min_articles) + "+";
    return label;
}

}  // namespace

EmitFormat parse_emit_format(std::string_view text) {
    if (text == "csv") return EmitFormat::csv;
    if (text == "json") return EmitFormat::json;
    if (text == "md") return EmitFormat::md;
    throw DataError("unknown format: " + std::string(text));
}

std::string to_string(EmitFormat format) {
    switch (format) {
        case EmitFormat::csv: return "csv";
        case EmitFormat::json: return "json";
        default: return "md";
    }
}

std::string format_value(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", value);
    return buf;
}

std::string format_cell(const std::optional<double>& value) {
    return value ? format_value(*value) : "-";
}

std::vector<TableConfig> standard_configs() {
    std::vector<TableConfig> configs;
    for (const auto source : {CountSource::citations, CountSource::readers}) {
        configs.push_back({source, MeanKind::arithmetic, false});
        configs.push_back({source, MeanKind::geometric, false});
        configs.push_back({source, MeanKind::arithmetic, true});
        configs.push_back({source, MeanKind::geometric, true});
    }
    return configs;
}

std::string config_label(const TableConfig& config, std::size_t min_articles) {
    auto label = to_string(config.source) + " " + to_string(config.mean_kind);
    if (config.filtered) label += " " + std::to_string(min_articles) + "+";
    return label;
}

std::vector<PairAnnotation> pair_annotations(const StabilityTable& table,
                                             const StabilityRow& row) {
    std::vector<PairAnnotation> annotations;
    for (const auto& pair : pair_columns(table.configs)) {
        if (pair.arith >= row.cells.size() || pair.geom >= row.cells.size()) continue;
        PairAnnotation annotation;
        annotation.source = table.configs[pair.geom].source;
        annotation.filtered = table.configs[pair.geom].filtered;
        const auto& arith = row.cells[pair.arith].average_rho;
        const auto& geom = row.cells[pair.geom].average_rho;
        if (arith && geom) annotation.gjif_higher = *geom > *arith;
        annotations.push_back(annotation);
    }
    return annotations;
}

StabilityTable build_stability_table(const Corpus& corpus,
                                     std::span<const std::string> subcategories,
                                     int year_first, int year_last,
                                     std::size_t min_articles) {
    if (subcategories.empty()) throw DataError("empty subcategory list");
    StabilityTable table;
    table.year_first = year_first;
    table.year_last = year_last;
    table.min_articles = min_articles;
    table.configs = standard_configs();

    std::vector<std::future<StabilityCell>> futures;
    futures.reserve(subcategories.size() * table.configs.size());
    for (const auto& subcategory : subcategories) {
        for (const auto& config : table.configs) {
            futures.push_back(std::async(std::launch::async, [&, config] {
                PairConfig pair_config{config.source, config.mean_kind,
                                       config.filtered ? min_articles : 0};
                const auto report = stability_report(corpus, subcategory, year_first,
                                                     year_last, pair_config);
                return StabilityCell{report.average_rho,
                                     static_cast<int>(report.pairs_used)};
            }));
        }
    }

    std::size_t next = 0;
    for (const auto& subcategory : subcategories) {
        StabilityRow row;
        row.subcategory = subcategory;
        for (std::size_t c = 0; c < table.configs.size(); ++c)
            row.cells.push_back(futures[next++].get());
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string emit_scores(std::span<const JournalScore> scores, EmitFormat format) {
    if (format == EmitFormat::json) {
        json out = json::array();
        for (const auto& s : scores) out.push_back(score_to_json(s));
        return out.dump(2) + "\n";
    }
    std::ostringstream out;
    if (format == EmitFormat::csv) {
        out << "journal_id,subcategory,year,source,mean,value,article_count\n";
        for (const auto& s : scores)
            out << detail::csv_escape(s.journal_id) << ','
                << detail::csv_escape(s.subcategory) << ',' << s.year << ','
                << to_string(s.source) << ',' << to_string(s.mean_kind) << ','
                << precise(s.value) << ',' << s.article_count << '\n';
        return std::move(out).str();
    }
    out << "| journal | subcategory | year | source | mean | value | articles |\n";
    out << "| --- | --- | --- | --- | --- | ---: | ---: |\n";
    for (const auto& s : scores)
        out << "| " << s.journal_id << " | " << s.subcategory << " | " << s.year
            << " | " << to_string(s.source) << " | " << to_string(s.mean_kind)
            << " | " << format_value(s.value) << " | " << s.article_count << " |\n";
    return std::move(out).str();
}

std::string emit_ranking(const RankingTable& table, EmitFormat format) {
    if (format == EmitFormat::json) {
        json entries = json::array();
        for (const auto& e : table.entries)
            entries.push_back(json{{"journal_id", e.journal_id},
                                   {"value", e.value},
                                   {"article_count", e.article_count},
                                   {"rank", e.rank}});
        const json out{{"subcategory", table.subcategory},
                       {"year", table.year},
                       {"source", to_string(table.source)},
                       {"mean", to_string(table.mean_kind)},
                       {"min_articles", table.min_articles},
                       {"entries", entries}};
        return out.dump(2) + "\n";
    }
    std::ostringstream out;
    if (format == EmitFormat::csv) {
        out << "rank,journal_id,value,article_count\n";
        for (const auto& e : table.entries)
            out << precise(e.rank) << ',' << detail::csv_escape(e.journal_id) << ','
                << precise(e.value) << ',' << e.article_count << '\n';
        return std::move(out).str();
    }
    out << "| rank | journal | value | articles |\n";
    out << "| ---: | --- | ---: | ---: |\n";
    for (const auto& e : table.entries)
        out << "| " << precise(e.rank) << " | " << e.journal_id << " | "
            << format_value(e.value) << " | " << e.article_count << " |\n";
    return std::move(out).str();
}

std::string emit_report(const StabilityReport& report, EmitFormat format) {
    if (format == EmitFormat::json) return report_to_json(report).dump(2) + "\n";
    std::ostringstream out;
    if (format == EmitFormat::csv) {
        out << "year_a,year_b,common_journals,rho,skipped,skip_reason\n";
        for (const auto& p : report.pairs)
            out << p.year_a << ',' << p.year_b << ',' << p.common_journals << ','
                << (p.rho ? precise(*p.rho) : "-") << ','
                << (p.skipped ? "true" : "false") << ','
                << detail::csv_escape(p.skip_reason) << '\n';
        return std::move(out).str();
    }
    out << "| years | common journals | rho |\n| --- | ---: | ---: |\n";
    for (const auto& p : report.pairs)
        out << "| " << p.year_a << "-" << p.year_b << " | " << p.common_journals
            << " | " << format_cell(p.rho) << " |\n";
    out << "\naverage rho over " << report.pairs_used
        << " pair(s): " << format_cell(report.average_rho) << "\n";
    return std::move(out).str();
}

std::string emit_stability(const StabilityTable& table, EmitFormat format) {
    if (format == EmitFormat::json) {
        json configs = json::array();
        for (const auto& c : table.configs) configs.push_back(config_to_json(c));
        json rows = json::array();
        for (const auto& row : table.rows) {
            json cells = json::array();
            for (const auto& cell : row.cells) {
                json v{{"pairs_used", cell.pairs_used}};
                v["average_rho"] =
                    cell.average_rho ? json(*cell.average_rho) : json(nullptr);
                cells.push_back(std::move(v));
            }
            json annotations = json::array();
            for (const auto& a : pair_annotations(table, row)) {
                json v{{"source", to_string(a.source)}, {"filtered", a.filtered}};
                v["gjif_higher"] = a.gjif_higher ? json(*a.gjif_higher) : json(nullptr);
                annotations.push_back(std::move(v));
            }
            rows.push_back(json{{"subcategory", row.subcategory},
                                {"cells", cells},
                                {"annotations", annotations}});
        }
        const json out{{"year_first", table.year_first},
                       {"year_last", table.year_last},
                       {"min_articles", table.min_articles},
                       {"configs", configs},
                       {"rows", rows}};
        return out.dump(2) + "\n";
    }

    std::vector<std::string> labels;
    for (const auto& c : table.configs)
        labels.push_back(config_label(c, table.min_articles));

    std::ostringstream out;
    if (format == EmitFormat::csv) {
        out << "subcategory";
        for (const auto& label : labels) out << ',' << detail::csv_escape(label);
        for (const auto& pair : pair_columns(table.configs)) {
            PairAnnotation shape{table.configs[pair.geom].source,
                                 table.configs[pair.geom].filtered, std::nullopt};
            out << ',' << detail::csv_escape(annotation_label(shape, table.min_articles));
        }
        out << '\n';
        for (const auto& row : table.rows) {
            out << detail::csv_escape(row.subcategory);
            for (const auto& cell : row.cells) out << ',' << format_cell(cell.average_rho);
            for (const auto& a : pair_annotations(table, row)) {
                out << ',';
                if (a.gjif_higher) out << (*a.gjif_higher ? "true" : "false");
                else out << '-';
            }
            out << '\n';
        }
        return std::move(out).str();
    }

    // md bolds the strictly higher cell of each arithmetic/geometric
    // pair; the explicit flag columns are left to csv/json
    std::vector<std::size_t> partner(table.configs.size(), table.configs.size());
    for (const auto& pair : pair_columns(table.configs)) {
        partner[pair.arith] = pair.geom;
        partner[pair.geom] = pair.arith;
    }
    out << "| subcategory |";
    for (const auto& label : labels) out << ' ' << label << " |";
    out << "\n| --- |";
    for (std::size_t i = 0; i < labels.size(); ++i) out << " ---: |";
    out << '\n';
    for (const auto& row : table.rows) {
        out << "| " << row.subcategory << " |";
        for (std::size_t c = 0; c < row.cells.size(); ++c) {
            const auto& value = row.cells[c].average_rho;
            bool bold = false;
            if (value && c < partner.size() && partner[c] < row.cells.size()) {
                const auto& other = row.cells[partner[c]].average_rho;
                bold = other && *value > *other;
            }
            const auto text = format_cell(value);
            out << ' ' << (bold ? "**" + text + "**" : text) << " |";
        }
        out << '\n';
    }
    return std::move(out).str();
}

std::vector<JournalScore> parse_scores_json(const std::string& text) {
    const auto parsed = parse_or_throw(text);
    if (!parsed.is_array()) throw DataError("invalid json: expected array");
    std::vector<JournalScore> scores;
    scores.reserve(parsed.size());
    for (const auto& v : parsed) scores.push_back(score_from_json(v));
    return scores;
}

RankingTable parse_ranking_json(const std::string& text) {
    const auto v = parse_or_throw(text);
    RankingTable table;
    table.subcategory = v.at("subcategory").get<std::string>();
    table.year = v.at("year").get<int>();
    table.source = source_from(v.at("source"));
    table.mean_kind = mean_from(v.at("mean"));
    table.min_articles = v.at("min_articles").get<std::size_t>();
    for (const auto& e : v.at("entries")) {
        RankingEntry entry;
        entry.journal_id = e.at("journal_id").get<std::string>();
        entry.value = e.at("value").get<double>();
        entry.article_count = e.at("article_count").get<std::size_t>();
        entry.rank = e.at("rank").get<double>();
        table.entries.push_back(std::move(entry));
    }
    return table;
}

StabilityReport parse_report_json(const std::string& text) {
    const auto v = parse_or_throw(text);
    StabilityReport r;
    r.subcategory = v.at("subcategory").get<std::string>();
    r.source = source_from(v.at("source"));
    r.mean_kind = mean_from(v.at("mean"));
    r.filtered = v.at("filtered").get<bool>();
    r.min_articles = v.at("min_articles").get<std::size_t>();
    r.year_first = v.at("year_first").get<int>();
    r.year_last = v.at("year_last").get<int>();
    for (const auto& p : v.at("pairs")) r.pairs.push_back(pair_from_json(p));
    r.pairs_used = v.at("pairs_used").get<std::size_t>();
    r.pairs_skipped = v.at("pairs_skipped").get<std::size_t>();
    if (!v.at("average_rho").is_null())
        r.average_rho = v.at("average_rho").get<double>();
    return r;
}

StabilityTable parse_stability_json(const std::string& text) {
    const auto v = parse_or_throw(text);
    StabilityTable table;
    table.year_first = v.at("year_first").get<int>();
    table.year_last = v.at("year_last").get<int>();
    table.min_articles = v.at("min_articles").get<std::size_t>();
    for (const auto& c : v.at("configs")) table.configs.push_back(config_from_json(c));
    for (const auto& r : v.at("rows")) {
        StabilityRow row;
        row.subcategory = r.at("subcategory").get<std::string>();
        for (const auto& cell : r.at("cells")) {
            StabilityCell parsed;
            parsed.pairs_used = cell.at("pairs_used").get<int>();
            if (!cell.at("average_rho").is_null())
                parsed.average_rho = cell.at("average_rho").get<double>();
            row.cells.push_back(parsed);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace jifkit
