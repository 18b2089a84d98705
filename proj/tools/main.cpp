#include <algorithm>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "../src/jifkit/csv.hpp"
#include "../src/jifkit/io_util.hpp"
#include "jifkit/errors.hpp"
#include "jifkit/ingest.hpp"
#include "jifkit/metrics.hpp"
#include "jifkit/ranking.hpp"
#include "jifkit/report.hpp"
#include "jifkit/stability.hpp"
#include "jifkit/synth.hpp"

namespace {

using namespace jifkit;

// Bad flag values; maps to exit code 2 like any other usage error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_years(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const int year = std::stoi(text);
            return {year, year};
        }
        const int a = std::stoi(text.substr(0, colon));
        const int b = std::stoi(text.substr(colon + 1));
        if (b < a) throw UsageError("--years: last year before first in " + text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw UsageError("--years: expected A:B, got " + text);
    }
}

CountSource source_flag(const std::string& text) {
    const auto parsed = parse_count_source(text);
    if (!parsed) throw UsageError("--source: expected citations or readers");
    return *parsed;
}

MeanKind mean_flag(const std::string& text) {
    const auto parsed = parse_mean_kind(text);
    if (!parsed) throw UsageError("--mean: expected arithmetic, geometric or both");
    return *parsed;
}

CorpusFormat detect_corpus_format(const std::string& path, const std::string& override_) {
    if (override_ == "csv") return CorpusFormat::csv;
    if (override_ == "jsonl") return CorpusFormat::jsonl;
    if (!override_.empty()) throw UsageError("--input-format: expected csv or jsonl");
    const auto ext = std::filesystem::path(path).extension().string();
    return (ext == ".jsonl" || ext == ".ndjson") ? CorpusFormat::jsonl
                                                 : CorpusFormat::csv;
}

std::string format_name(CorpusFormat format) {
    return format == CorpusFormat::jsonl ? "jsonl" : "csv";
}

std::string utc_timestamp() {
    const auto now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string hex64(std::uint64_t value) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

// Writes the payload and a sibling manifest recording what produced it.
// options must carry the fully resolved configuration of the run, defaults
// included, so the manifest plus the digested inputs reproduce the output.
// Without --output the payload goes to stdout and no manifest is written.
void deliver(const std::string& payload, const std::string& output,
             const std::string& command, const std::vector<std::string>& inputs,
             const nlohmann::json& options, std::size_t rows) {
    if (output.empty()) {
        std::cout << payload;
        return;
    }
    detail::atomic_write(output, payload);

    nlohmann::json digests = nlohmann::json::object();
    for (const auto& path : inputs)
        digests[path] = "fnv1a64:" + hex64(detail::fnv1a64(detail::read_file(path)));
    const nlohmann::json manifest{{"command", command},
                                  {"inputs", digests},
                                  {"options", options},
                                  {"output", output},
                                  {"rows", rows},
                                  {"written_at", utc_timestamp()}};
    detail::atomic_write(output + ".manifest.json", manifest.dump(2) + "\n");
}

std::string records_csv(const std::vector<ArticleRecord>& records) {
    std::ostringstream out;
    out << "article_id,journal_id,subcategory,year,doc_type,citations,readers\n";
    for (const auto& r : records) {
        out << detail::csv_escape(r.article_id) << ','
            << detail::csv_escape(r.journal_id) << ','
            << detail::csv_escape(r.subcategory) << ',' << r.year << ','
            << to_string(r.doc_type) << ',' << r.citations << ',';
        if (r.readers) out << *r.readers;
        out << '\n';
    }
    return std::move(out).str();
}

std::string records_jsonl(const std::vector<ArticleRecord>& records) {
    std::ostringstream out;
    for (const auto& r : records) {
        nlohmann::json row{{"article_id", r.article_id},
                           {"journal_id", r.journal_id},
                           {"subcategory", r.subcategory},
                           {"year", r.year},
                           {"doc_type", to_string(r.doc_type)},
                           {"citations", r.citations}};
        row["readers"] = r.readers ? nlohmann::json(*r.readers) : nlohmann::json(nullptr);
        out << row.dump() << '\n';
    }
    return std::move(out).str();
}

// Scores for every journal-year of the corpus, restricted to the requested
// years/sources/means, in a fixed (subcategory, year, journal, source,
// mean) order.
std::vector<JournalScore> compute_scores(const Corpus& corpus,
                                         std::optional<std::pair<int, int>> years,
                                         const std::vector<CountSource>& sources,
                                         const std::vector<MeanKind>& means) {
    std::vector<JournalScore> scores;
    for (const auto& subcategory : corpus.subcategories()) {
        for (const int year : corpus.years(subcategory)) {
            if (years && (year < years->first || year > years->second)) continue;
            for (const auto& [journal, group] : group_articles(corpus, subcategory, year)) {
                (void)journal;
                for (const auto source : sources)
                    for (const auto mean : means)
                        scores.push_back(score_journal_year(group, source, mean));
            }
        }
    }
    return scores;
}

std::string shock_payload(const ShockExperiment& exp, const std::string& preset,
                          EmitFormat format) {
    const auto row = [](const ShockOutcome& o) {
        return nlohmann::json{{"value_before", o.value_before},
                              {"value_after", o.value_after},
                              {"value_delta", o.value_delta()},
                              {"rank_before", o.rank_before},
                              {"rank_after", o.rank_after},
                              {"rank_displacement", o.rank_displacement()}};
    };
    const double delta_g = exp.geometric.value_delta();
    nlohmann::json out{{"preset", preset},
                       {"baseline_articles", exp.baseline.size()},
                       {"shock_count", exp.shock_count},
                       {"arithmetic", row(exp.arithmetic)},
                       {"geometric", row(exp.geometric)}};
    out["delta_ratio"] = delta_g != 0.0
                             ? nlohmann::json(exp.arithmetic.value_delta() / delta_g)
                             : nlohmann::json(nullptr);
    if (format == EmitFormat::json) return out.dump(2) + "\n";

    const auto line = [](const char* name, const ShockOutcome& o) {
        std::ostringstream s;
        s << name << ',' << format_value(o.value_before) << ','
          << format_value(o.value_after) << ',' << o.rank_before << ','
          << o.rank_after << ',' << format_value(o.rank_displacement()) << '\n';
        return std::move(s).str();
    };
    if (format == EmitFormat::csv) {
        std::string s = "mean,value_before,value_after,rank_before,rank_after,displacement\n";
        s += line("arithmetic", exp.arithmetic);
        s += line("geometric", exp.geometric);
        return s;
    }
    std::ostringstream s;
    s << "| mean | value before | value after | rank before | rank after |\n";
    s << "| --- | ---: | ---: | ---: | ---: |\n";
    s << "| arithmetic | " << format_value(exp.arithmetic.value_before) << " | "
      << format_value(exp.arithmetic.value_after) << " | "
      << exp.arithmetic.rank_before << " | " << exp.arithmetic.rank_after << " |\n";
    s << "| geometric | " << format_value(exp.geometric.value_before) << " | "
      << format_value(exp.geometric.value_after) << " | "
      << exp.geometric.rank_before << " | " << exp.geometric.rank_after << " |\n";
    return std::move(s).str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"journal impact indicators: compute, rank, and stress-test"};
    app.require_subcommand(1);

    std::string input, output, format = "csv", input_format;
    std::string source_text = "citations", mean_text, years_text, subcategory;
    std::string spec_path, preset, subcategories_text;
    int year = 0;
    std::size_t min_articles = 10;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto* cmd_ingest = app.add_subcommand("ingest", "validate an article file");
    cmd_ingest->add_option("--input", input)->required();
    cmd_ingest->add_option("--input-format", input_format);
    cmd_ingest->add_option("--output", output);

    auto* cmd_compute = app.add_subcommand("compute", "impact values per journal-year");
    cmd_compute->add_option("--input", input)->required();
    cmd_compute->add_option("--input-format", input_format);
    cmd_compute->add_option("--output", output);
    cmd_compute->add_option("--format", format);
    cmd_compute->add_option("--source", source_text);
    cmd_compute->add_option("--mean", mean_text);
    cmd_compute->add_option("--years", years_text);

    auto* cmd_rank = app.add_subcommand("rank", "ranked journals of one field-year");
    cmd_rank->add_option("--input", input)->required();
    cmd_rank->add_option("--input-format", input_format);
    cmd_rank->add_option("--output", output);
    cmd_rank->add_option("--format", format);
    cmd_rank->add_option("--subcategory", subcategory)->required();
    cmd_rank->add_option("--year", year)->required();
    cmd_rank->add_option("--source", source_text);
    cmd_rank->add_option("--mean", mean_text);
    cmd_rank->add_option("--min-articles", min_articles);

    auto* cmd_stability = app.add_subcommand("stability", "year-to-year rank correlation");
    cmd_stability->add_option("--input", input)->required();
    cmd_stability->add_option("--input-format", input_format);
    cmd_stability->add_option("--output", output);
    cmd_stability->add_option("--format", format);
    cmd_stability->add_option("--subcategory", subcategory)->required();
    cmd_stability->add_option("--source", source_text);
    cmd_stability->add_option("--mean", mean_text);
    cmd_stability->add_option("--min-articles", min_articles);
    cmd_stability->add_option("--years", years_text);

    auto* cmd_table = app.add_subcommand("table", "stability overview, all configurations");
    cmd_table->add_option("--input", input)->required();
    cmd_table->add_option("--input-format", input_format);
    cmd_table->add_option("--output", output);
    cmd_table->add_option("--format", format);
    cmd_table->add_option("--min-articles", min_articles);
    cmd_table->add_option("--years", years_text);
    cmd_table->add_option("--subcategories", subcategories_text,
                          "comma-separated; defaults to all in the input");

    auto* cmd_synth = app.add_subcommand("synth", "generate a synthetic field");
    cmd_synth->add_option("--spec", spec_path)->required();
    cmd_synth->add_option("--output", output);
    cmd_synth->add_option("--format", format, "csv or jsonl");
    auto* synth_seed = cmd_synth->add_option("--seed", seed);

    auto* cmd_shock = app.add_subcommand("shock", "single-article shock experiment");
    cmd_shock->add_option("--preset", preset, "systematics or fly")->required();
    cmd_shock->add_option("--output", output);
    cmd_shock->add_option("--format", format);
    auto* shock_seed = cmd_shock->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    seed_set = synth_seed->count() > 0 || shock_seed->count() > 0;

    try {
        if (app.got_subcommand(cmd_ingest)) {
            const auto corpus_format = detect_corpus_format(input, input_format);
            const auto result = ingest_corpus(input, corpus_format);
            const auto& summary = result.summary;
            std::cout << "rows: " << summary.total_rows
                      << "\naccepted: " << summary.accepted
                      << "\nrejected: " << summary.rejects.size() << "\n";
            for (const auto& reject : summary.rejects)
                std::cout << "  line " << reject.line << ": " << reject.reason << "\n";
            for (const auto& warning : summary.warnings)
                std::cout << "warning: " << warning << "\n";
            if (!output.empty())
                deliver(records_jsonl(result.corpus.records()), output, "ingest",
                        {input}, {{"input_format", format_name(corpus_format)}},
                        result.corpus.size());
        } else if (app.got_subcommand(cmd_compute)) {
            const auto corpus_format = detect_corpus_format(input, input_format);
            const auto corpus = ingest_corpus(input, corpus_format).corpus;
            std::optional<std::pair<int, int>> years;
            if (!years_text.empty()) years = parse_years(years_text);

            std::vector<CountSource> sources{CountSource::citations, CountSource::readers};
            if (cmd_compute->count("--source")) sources = {source_flag(source_text)};
            std::vector<MeanKind> means{MeanKind::arithmetic, MeanKind::geometric};
            if (!mean_text.empty() && mean_text != "both") means = {mean_flag(mean_text)};

            nlohmann::json source_names = nlohmann::json::array();
            for (const auto s : sources) source_names.push_back(to_string(s));
            nlohmann::json mean_names = nlohmann::json::array();
            for (const auto m : means) mean_names.push_back(to_string(m));
            nlohmann::json years_echo = nullptr;  // null = no year restriction
            if (years)
                years_echo = std::to_string(years->first) + ":" +
                             std::to_string(years->second);

            const auto scores = compute_scores(corpus, years, sources, means);
            deliver(emit_scores(scores, parse_emit_format(format)), output, "compute",
                    {input},
                    {{"input_format", format_name(corpus_format)},
                     {"format", format},
                     {"sources", source_names},
                     {"means", mean_names},
                     {"years", years_echo}},
                    scores.size());
        } else if (app.got_subcommand(cmd_rank)) {
            if (mean_text == "both")
                throw UsageError("--mean: rank needs a single mean");
            const auto corpus_format = detect_corpus_format(input, input_format);
            const auto corpus = ingest_corpus(input, corpus_format).corpus;
            const auto source = source_flag(source_text);
            const auto mean = mean_text.empty() ? MeanKind::geometric : mean_flag(mean_text);

            std::vector<JournalScore> scores;
            for (const auto& [journal, group] : group_articles(corpus, subcategory, year)) {
                (void)journal;
                scores.push_back(score_journal_year(group, source, mean));
            }
            const auto table = rank_journals(scores, min_articles);
            deliver(emit_ranking(table, parse_emit_format(format)), output, "rank",
                    {input},
                    {{"input_format", format_name(corpus_format)},
                     {"format", format},
                     {"subcategory", subcategory},
                     {"year", year},
                     {"source", to_string(source)},
                     {"mean", to_string(mean)},
                     {"min_articles", min_articles}},
                    table.entries.size());
        } else if (app.got_subcommand(cmd_stability)) {
            if (mean_text == "both")
                throw UsageError("--mean: stability needs a single mean");
            const auto corpus_format = detect_corpus_format(input, input_format);
            const auto corpus = ingest_corpus(input, corpus_format).corpus;
            const auto [year_first, year_last] =
                parse_years(years_text.empty() ? "2004:2014" : years_text);
            const auto source = source_flag(source_text);
            const auto mean = mean_text.empty() ? MeanKind::geometric : mean_flag(mean_text);
            const PairConfig config{source, mean, min_articles};
            const auto report =
                stability_report(corpus, subcategory, year_first, year_last, config);
            deliver(emit_report(report, parse_emit_format(format)), output, "stability",
                    {input},
                    {{"input_format", format_name(corpus_format)},
                     {"format", format},
                     {"subcategory", subcategory},
                     {"years", std::to_string(year_first) + ":" + std::to_string(year_last)},
                     {"source", to_string(source)},
                     {"mean", to_string(mean)},
                     {"min_articles", min_articles}},
                    report.pairs.size());
        } else if (app.got_subcommand(cmd_table)) {
            const auto corpus_format = detect_corpus_format(input, input_format);
            const auto corpus = ingest_corpus(input, corpus_format).corpus;
            const auto [year_first, year_last] =
                parse_years(years_text.empty() ? "2004:2014" : years_text);

            std::vector<std::string> subcategories;
            if (subcategories_text.empty()) {
                subcategories = corpus.subcategories();
            } else {
                std::istringstream in(subcategories_text);
                std::string item;
                while (std::getline(in, item, ','))
                    if (!item.empty()) subcategories.push_back(item);
            }
            const auto table = build_stability_table(corpus, subcategories, year_first,
                                                     year_last, min_articles);
            deliver(emit_stability(table, parse_emit_format(format)), output, "table",
                    {input},
                    {{"input_format", format_name(corpus_format)},
                     {"format", format},
                     {"years", std::to_string(year_first) + ":" + std::to_string(year_last)},
                     {"min_articles", min_articles},
                     {"subcategories", subcategories}},
                    table.rows.size());
        } else if (app.got_subcommand(cmd_synth)) {
            auto spec = load_field_spec(spec_path);
            if (seed_set) spec.seed = seed;
            const auto corpus = generate_corpus(spec);
            std::string payload;
            if (format == "csv") payload = records_csv(corpus.records());
            else if (format == "jsonl") payload = records_jsonl(corpus.records());
            else throw UsageError("--format: synth emits csv or jsonl");
            deliver(payload, output, "synth", {spec_path},
                    {{"format", format}, {"seed", spec.seed}}, corpus.size());
        } else if (app.got_subcommand(cmd_shock)) {
            ShockExperiment exp;
            if (preset == "systematics") exp = systematics_preset();
            else if (preset == "fly") exp = fly_preset();
            else throw UsageError("--preset: expected systematics or fly");
            if (seed_set) exp.field.seed = seed;
            exp = run_shock_experiment(std::move(exp));
            deliver(shock_payload(exp, preset, parse_emit_format(format)), output,
                    "shock", {},
                    {{"format", format}, {"preset", preset}, {"seed", exp.field.seed}},
                    2);
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
