#include "jifkit/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "io_util.hpp"
#include "jifkit/errors.hpp"
#include "jifkit/metrics.hpp"
#include "jifkit/ranking.hpp"
#include "jifkit/rng.hpp"

namespace jifkit {
namespace {

std::string zero_padded(std::size_t value, std::size_t width) {
    auto text = std::to_string(value);
    if (text.size() < width) text.insert(0, width - text.size(), '0');
    return text;
}

std::int64_t lognormal_count(double z) {
    const double raw = std::floor(std::exp(z)) - 1.0;
    return raw <= 0.0 ? 0 : static_cast<std::int64_t>(raw);
}

// Draws one journal-year's counts. The stream is dedicated to this
// journal-year, so the draw sequence of one group never shifts another's.
std::vector<std::int64_t> draw_counts(RandomStream& stream, std::size_t n_articles,
                                      double mu, double sigma, double drift) {
    const double eps = stream.normal();  // drawn even at drift 0: keeps alignment
    const double mu_year = mu + drift * eps;
    std::vector<std::int64_t> counts(n_articles);
    for (auto& c : counts) c = lognormal_count(stream.normal(mu_year, sigma));
    return counts;
}

double parse_double_or_throw(const std::string& key, std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw DataError("unparseable value for " + key);
    return value;
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

const RankingEntry& entry_of(const RankingTable& table, const std::string& journal) {
    for (const auto& e : table.entries)
        if (e.journal_id == journal) return e;
    throw DataError("journal missing from ranking: " + journal);
}

}  // namespace

void FieldSpec::validate() const {
    const auto fail = [](const std::string& what) {
        throw DataError("invalid field spec: " + what);
    };
    if (n_journals == 0) fail("n_journals");
    if (year_last < year_first) fail("year range");
    if (articles_min == 0) fail("articles_min");
    if (articles_max < articles_min) fail("articles_max");
    if (!(mu_max >= mu_min)) fail("mu range");
    if (!(sigma > 0.0)) fail("sigma");
    if (!(drift >= 0.0)) fail("drift");
    if (!(shock_rate >= 0.0 && shock_rate <= 1.0)) fail("shock_rate");
    if (shock_count < 1) fail("shock_count");
    if (subcategory.empty()) fail("subcategory");
    if (readers) {
        if (!(readers_mu_max >= readers_mu_min)) fail("readers mu range");
        if (!(readers_sigma > 0.0)) fail("readers_sigma");
    }
}

Corpus generate_corpus(const FieldSpec& spec) {
    spec.validate();

    const auto n_years =
        static_cast<std::size_t>(spec.year_last - spec.year_first) + 1;
    const std::size_t journal_width = std::to_string(spec.n_journals).size();
    const std::size_t article_width = std::to_string(spec.articles_max).size();

    // Every purpose draws from its own tagged stream, so turning readers on
    // or off never shifts the citation draws, and one journal-year's counts
    // never shift another's.
    constexpr std::uint64_t kTagCounts = 1ULL << 56;
    constexpr std::uint64_t kTagShock = 2ULL << 56;
    constexpr std::uint64_t kTagReaders = 3ULL << 56;
    constexpr std::uint64_t kTagReaderParams = 4ULL << 56;

    RandomStream params(spec.seed, 0);
    RandomStream reader_params(spec.seed, kTagReaderParams);
    std::vector<double> mu(spec.n_journals);
    std::vector<double> readers_mu(spec.n_journals, 0.0);
    std::vector<std::size_t> n_articles(spec.n_journals);
    for (std::size_t j = 0; j < spec.n_journals; ++j) {
        mu[j] = spec.mu_min + params.uniform() * (spec.mu_max - spec.mu_min);
        n_articles[j] = static_cast<std::size_t>(
            params.uniform_int(static_cast<std::int64_t>(spec.articles_min),
                               static_cast<std::int64_t>(spec.articles_max)));
        if (spec.readers)
            readers_mu[j] = spec.readers_mu_min +
                            reader_params.uniform() *
                                (spec.readers_mu_max - spec.readers_mu_min);
    }

    std::vector<ArticleRecord> records;
    for (std::size_t j = 0; j < spec.n_journals; ++j) {
        const auto journal_id = "J" + zero_padded(j + 1, journal_width);
        for (std::size_t y = 0; y < n_years; ++y) {
            const int year = spec.year_first + static_cast<int>(y);
            const std::uint64_t cell = j * n_years + y;

            RandomStream counts_stream(spec.seed, kTagCounts | cell);
            auto counts = draw_counts(counts_stream, n_articles[j], mu[j],
                                      spec.sigma, spec.drift);

            RandomStream shock_stream(spec.seed, kTagShock | cell);
            if (shock_stream.uniform() < spec.shock_rate) {
                const auto idx = shock_stream.uniform_int(
                    0, static_cast<std::int64_t>(n_articles[j]) - 1);
                counts[static_cast<std::size_t>(idx)] = spec.shock_count;
            }

            std::vector<std::int64_t> reader_counts;
            if (spec.readers) {
                RandomStream readers_stream(spec.seed, kTagReaders | cell);
                reader_counts = draw_counts(readers_stream, n_articles[j],
                                            readers_mu[j], spec.readers_sigma,
                                            spec.drift);
            }

            for (std::size_t i = 0; i < n_articles[j]; ++i) {
                ArticleRecord r;
                r.article_id = journal_id + "-" + std::to_string(year) + "-" +
                               zero_padded(i + 1, article_width);
                r.journal_id = journal_id;
                r.subcategory = spec.subcategory;
                r.year = year;
                r.doc_type = DocType::article;
                r.citations = counts[i];
                if (spec.readers) r.readers = reader_counts[i];
                records.push_back(std::move(r));
            }
        }
    }
    return Corpus::from_records(std::move(records));
}

FieldSpec load_field_spec(const std::filesystem::path& path) {
    const auto content = detail::read_file(path);
    std::istringstream in(content);

    FieldSpec spec;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        const auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        const auto stripped = strip(line);
        if (stripped.empty()) continue;

        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw DataError("bad spec line " + std::to_string(line_no) + ": " + stripped);
        const auto key = strip(stripped.substr(0, eq));
        const auto value = strip(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw DataError("bad spec line " + std::to_string(line_no) + ": " + stripped);

        const auto as_size = [&] {
            return static_cast<std::size_t>(parse_double_or_throw(key, value));
        };
        const auto as_bool = [&] {
            if (value == "true" || value == "1") return true;
            if (value == "false" || value == "0") return false;
            throw DataError("unparseable value for " + key);
        };

        if (key == "n_journals") spec.n_journals = as_size();
        else if (key == "year_first") spec.year_first = static_cast<int>(parse_double_or_throw(key, value));
        else if (key == "year_last") spec.year_last = static_cast<int>(parse_double_or_throw(key, value));
        else if (key == "articles_min") spec.articles_min = as_size();
        else if (key == "articles_max") spec.articles_max = as_size();
        else if (key == "mu_min") spec.mu_min = parse_double_or_throw(key, value);
        else if (key == "mu_max") spec.mu_max = parse_double_or_throw(key, value);
        else if (key == "sigma") spec.sigma = parse_double_or_throw(key, value);
        else if (key == "drift") spec.drift = parse_double_or_throw(key, value);
        else if (key == "shock_rate") spec.shock_rate = parse_double_or_throw(key, value);
        else if (key == "shock_count") spec.shock_count = static_cast<std::int64_t>(parse_double_or_throw(key, value));
        else if (key == "seed") {
            std::uint64_t seed = 0;
            const auto* end = value.data() + value.size();
            const auto [ptr, ec] = std::from_chars(value.data(), end, seed);
            if (ec != std::errc() || ptr != end)
                throw DataError("unparseable value for seed");
            spec.seed = seed;
        }
        else if (key == "subcategory") spec.subcategory = value;
        else if (key == "readers") spec.readers = as_bool();
        else if (key == "readers_mu_min") spec.readers_mu_min = parse_double_or_throw(key, value);
        else if (key == "readers_mu_max") spec.readers_mu_max = parse_double_or_throw(key, value);
        else if (key == "readers_sigma") spec.readers_sigma = parse_double_or_throw(key, value);
        else throw DataError("unknown key: " + key);
    }
    spec.validate();
    return spec;
}

void save_field_spec(const FieldSpec& spec, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "n_journals = " << spec.n_journals << "\n";
    out << "year_first = " << spec.year_first << "\n";
    out << "year_last = " << spec.year_last << "\n";
    out << "articles_min = " << spec.articles_min << "\n";
    out << "articles_max = " << spec.articles_max << "\n";
    out << "mu_min = " << format_double(spec.mu_min) << "\n";
    out << "mu_max = " << format_double(spec.mu_max) << "\n";
    out << "sigma = " << format_double(spec.sigma) << "\n";
    out << "drift = " << format_double(spec.drift) << "\n";
    out << "shock_rate = " << format_double(spec.shock_rate) << "\n";
    out << "shock_count = " << spec.shock_count << "\n";
    out << "seed = " << spec.seed << "\n";
    out << "subcategory = " << spec.subcategory << "\n";
    out << "readers = " << (spec.readers ? "true" : "false") << "\n";
    if (spec.readers) {
        out << "readers_mu_min = " << format_double(spec.readers_mu_min) << "\n";
        out << "readers_mu_max = " << format_double(spec.readers_mu_max) << "\n";
        out << "readers_sigma = " << format_double(spec.readers_sigma) << "\n";
    }
    detail::atomic_write(path, out.str());
}

std::int64_t low_median(std::span<const std::int64_t> counts) {
    if (counts.empty()) throw DataError("empty counts");
    std::vector<std::int64_t> sorted(counts.begin(), counts.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted[(sorted.size() - 1) / 2];
}

std::vector<std::int64_t> apply_shock(std::span<const std::int64_t> baseline,
                                      std::int64_t shock_count) {
    const auto median = low_median(baseline);
    std::vector<std::int64_t> shocked(baseline.begin(), baseline.end());
    const auto it = std::find(shocked.begin(), shocked.end(), median);
    *it = shock_count;  // a median substitution at shock_count == median is a no-op
    return shocked;
}

ShockExperiment run_shock_experiment(ShockExperiment exp) {
    if (exp.baseline.empty()) throw DataError("empty counts");
    exp.field.validate();
    if (exp.field.year_last < exp.field.year_first + 1)
        throw DataError("invalid field spec: shock experiment needs 2 years");

    // Both scenarios are ranked in the journal's second year against that
    // year's field draws; only the substituted article differs between them.
    const int eval_year = exp.field.year_first + 1;
    const std::string journal_id = "shocked";
    const auto shocked_counts = apply_shock(exp.baseline, exp.shock_count);
    const auto corpus = generate_corpus(exp.field);

    const auto outcome_for = [&](MeanKind kind) {
        std::vector<JournalScore> field_scores;
        for (const auto& [_, group] : group_articles(corpus, exp.field.subcategory, eval_year))
            field_scores.push_back(score_journal_year(group, CountSource::citations, kind));

        const auto ranked = [&](const std::vector<std::int64_t>& counts,
                                double& value, double& rank) {
            JournalScore score;
            score.journal_id = journal_id;
            score.subcategory = exp.field.subcategory;
            score.year = eval_year;
            score.source = CountSource::citations;
            score.mean_kind = kind;
            score.value = kind == MeanKind::arithmetic ? arithmetic_jif(counts)
                                                       : geometric_jif(counts);
            score.article_count = counts.size();

            auto scores = field_scores;
            scores.push_back(std::move(score));
            const auto table = rank_journals(scores, 0);
            const auto& entry = entry_of(table, journal_id);
            value = entry.value;
            rank = entry.rank;
        };

        ShockOutcome outcome;
        ranked(exp.baseline, outcome.value_before, outcome.rank_before);
        ranked(shocked_counts, outcome.value_after, outcome.rank_after);
        return outcome;
    };
    exp.arithmetic = outcome_for(MeanKind::arithmetic);
    exp.geometric = outcome_for(MeanKind::geometric);
    return exp;
}

ShockExperiment systematics_preset() {
    ShockExperiment exp;
    exp.baseline = {30, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    exp.shock_count = 170;
    exp.field.n_journals = 19;
    exp.field.year_first = 2004;
    exp.field.year_last = 2005;
    exp.field.articles_min = 15;
    exp.field.articles_max = 40;
    exp.field.mu_min = std::log(2.0);
    exp.field.mu_max = std::log(6.0);
    exp.field.sigma = 1.0;
    exp.field.drift = 0.1;
    exp.field.shock_rate = 0.0;
    exp.field.seed = 1205;
    exp.field.subcategory = "systematics";
    return exp;
}

ShockExperiment fly_preset() {
    ShockExperiment exp;
    exp.baseline = {8, 5, 4, 3, 3, 2, 2, 2, 1, 1, 1, 1};
    exp.baseline.resize(52, 0);
    exp.shock_count = 192;
    exp.field.n_journals = 25;
    exp.field.year_first = 2011;
    exp.field.year_last = 2012;
    exp.field.articles_min = 20;
    exp.field.articles_max = 60;
    exp.field.mu_min = std::log(2.0);
    exp.field.mu_max = std::log(8.0);
    exp.field.sigma = 1.0;
    exp.field.drift = 0.1;
    exp.field.shock_rate = 0.0;
    exp.field.seed = 1212;
    exp.field.subcategory = "fly";
    return exp;
}

}  // namespace jifkit
