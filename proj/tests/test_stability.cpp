#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "jifkit/errors.hpp"
#include "jifkit/ingest.hpp"
#include "jifkit/rng.hpp"
#include "jifkit/stability.hpp"
#include "jifkit/synth.hpp"

using namespace jifkit;

namespace {

const std::string kFixtures = JIFKIT_FIXTURES_DIR;

ArticleRecord make(const std::string& id, const std::string& journal, int year,
                   std::int64_t citations) {
    ArticleRecord r;
    r.article_id = id;
    r.journal_id = journal;
    r.subcategory = "eco";
    r.year = year;
    r.doc_type = DocType::article;
    r.citations = citations;
    return r;
}

// Rank vector built by the quadratic counting definition, then the raw-sums
// Pearson formula. Slower and structurally different from the library path.
double spearman_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    const auto counting_ranks = [](const std::vector<double>& v) {
        std::vector<double> ranks(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            double less = 0, equal = 0;
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (j == i) continue;
                if (v[j] < v[i]) ++less;
                if (v[j] == v[i]) ++equal;
            }
            ranks[i] = 1.0 + less + equal / 2.0;
        }
        return ranks;
    };
    const auto rx = counting_ranks(x);
    const auto ry = counting_ranks(y);
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sx += rx[i];
        sy += ry[i];
        sxx += rx[i] * rx[i];
        syy += ry[i] * ry[i];
        sxy += rx[i] * ry[i];
    }
    return (n * sxy - sx * sy) /
           std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

// A journal with `n` articles of the given constant count.
void add_journal_year(std::vector<ArticleRecord>& records, const std::string& journal,
                      int year, int n, std::int64_t count) {
    for (int i = 0; i < n; ++i)
        records.push_back(make(journal + "-" + std::to_string(year) + "-" +
                                   std::to_string(i),
                               journal, year, count));
}

}  // namespace

TEST_CASE("spearman on pinned vectors") {
    CHECK(spearman_rho(std::vector<double>{1, 2, 3, 4},
                       std::vector<double>{1, 3, 2, 4}) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(spearman_rho(std::vector<double>{1, 2, 3}, std::vector<double>{10, 20, 30}) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(spearman_rho(std::vector<double>{1, 2, 3}, std::vector<double>{9, 5, 1}) ==
          doctest::Approx(-1.0).epsilon(1e-14));
    // tie in x: frozen from an independent evaluation of the tie-corrected form
    CHECK(spearman_rho(std::vector<double>{1, 1, 2}, std::vector<double>{1, 2, 3}) ==
          doctest::Approx(0.8660254037844387).epsilon(1e-13));
}

TEST_CASE("spearman rejects undefined inputs") {
    CHECK_THROWS_WITH_AS(
        spearman_rho(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}),
        "undefined correlation: length mismatch", DataError);
    CHECK_THROWS_WITH_AS(
        spearman_rho(std::vector<double>{1, 2}, std::vector<double>{1, 2}),
        "undefined correlation: fewer than 3 points", DataError);
    CHECK_THROWS_WITH_AS(
        spearman_rho(std::vector<double>{5, 5, 5}, std::vector<double>{1, 2, 3}),
        "undefined correlation: zero rank variance", DataError);
}

TEST_CASE("spearman matches the counting-rank oracle under heavy ties") {
    RandomStream rng(71, 0);
    int checked = 0;
    while (checked < 300) {
        const auto n = rng.uniform_int(3, 20);
        std::vector<double> x(static_cast<std::size_t>(n)), y(x.size());
        for (auto& v : x) v = static_cast<double>(rng.uniform_int(0, 5));
        for (auto& v : y) v = static_cast<double>(rng.uniform_int(0, 5));
        const bool x_flat = std::all_of(x.begin(), x.end(),
                                        [&](double v) { return v == x[0]; });
        const bool y_flat = std::all_of(y.begin(), y.end(),
                                        [&](double v) { return v == y[0]; });
        if (x_flat || y_flat) continue;
        CHECK(spearman_rho(x, y) ==
              doctest::Approx(spearman_oracle(x, y)).epsilon(1e-12));
        ++checked;
    }
}

TEST_CASE("journals_in_both_years needs presence on both sides") {
    std::vector<ArticleRecord> records;
    add_journal_year(records, "ja", 2004, 12, 3);
    add_journal_year(records, "ja", 2005, 12, 4);
    add_journal_year(records, "jb", 2004, 12, 1);  // missing in 2005
    add_journal_year(records, "jc", 2005, 12, 2);  // missing in 2004
    add_journal_year(records, "jd", 2004, 4, 6);
    add_journal_year(records, "jd", 2005, 12, 6);  // thin in 2004
    const auto corpus = Corpus::from_records(std::move(records));

    CHECK(journals_in_both_years(corpus, "eco", 2004, 2005, 0) ==
          std::vector<std::string>{"ja", "jd"});
    CHECK(journals_in_both_years(corpus, "eco", 2004, 2005, 10) ==
          std::vector<std::string>{"ja"});

    // the membership test is symmetric in the two years
    auto forward = journals_in_both_years(corpus, "eco", 2004, 2005, 0);
    auto backward = journals_in_both_years(corpus, "eco", 2005, 2004, 0);
    CHECK(forward == backward);
}

TEST_CASE("a thin pair is skipped, not an error") {
    std::vector<ArticleRecord> records;
    add_journal_year(records, "ja", 2004, 5, 3);
    add_journal_year(records, "ja", 2005, 5, 4);
    add_journal_year(records, "jb", 2004, 5, 1);
    add_journal_year(records, "jb", 2005, 5, 2);
    const auto corpus = Corpus::from_records(std::move(records));

    const auto pair = consecutive_pair(corpus, "eco", 2004, {});
    CHECK(pair.skipped);
    CHECK(pair.skip_reason == "fewer than 3 common journals");
    CHECK(pair.common_journals == 2);
    CHECK_FALSE(pair.rho.has_value());
}

TEST_CASE("flat values in a year skip the pair with zero rank variance") {
    std::vector<ArticleRecord> records;
    for (const auto* journal : {"ja", "jb", "jc"}) {
        add_journal_year(records, journal, 2004, 5, 7);  // identical in 2004
        add_journal_year(records, journal, 2005, 5,
                         static_cast<std::int64_t>(journal[1]));
    }
    const auto corpus = Corpus::from_records(std::move(records));
    const auto pair = consecutive_pair(corpus, "eco", 2004, {});
    CHECK(pair.skipped);
    CHECK(pair.skip_reason == "zero rank variance");
    CHECK(pair.common_journals == 3);
}

TEST_CASE("identical consecutive years correlate perfectly") {
    const auto corpus =
        ingest_corpus(kFixtures + "/two_years_identical.csv", CorpusFormat::csv).corpus;
    for (const auto mean : {MeanKind::arithmetic, MeanKind::geometric}) {
        for (const std::size_t threshold : {std::size_t{0}, std::size_t{10}}) {
            const PairConfig config{CountSource::citations, mean, threshold};
            const auto report = stability_report(corpus, "taxonomy", 2004, 2005, config);
            CHECK(report.pairs_used == 1);
            REQUIRE(report.average_rho.has_value());
            CHECK(*report.average_rho == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("a report spans one pair per consecutive year couple") {
    std::vector<ArticleRecord> records;
    for (int year = 2004; year <= 2008; ++year) {
        add_journal_year(records, "ja", year, 4, 2 + year % 3);
        add_journal_year(records, "jb", year, 4, 5 + year % 2);
        add_journal_year(records, "jc", year, 4, 1 + year % 5);
        add_journal_year(records, "jd", year, 4, 7 - year % 4);
    }
    const auto corpus = Corpus::from_records(std::move(records));
    const auto report = stability_report(corpus, "eco", 2004, 2008, {});

    CHECK(report.pairs.size() == 4);  // 5 years, 4 couples
    CHECK(report.pairs_used + report.pairs_skipped == 4);
    for (std::size_t i = 0; i < report.pairs.size(); ++i) {
        CHECK(report.pairs[i].year_a == 2004 + static_cast<int>(i));
        CHECK(report.pairs[i].year_b == report.pairs[i].year_a + 1);
    }
}

TEST_CASE("the average ignores skipped pairs") {
    std::vector<ArticleRecord> records;
    // 2004-2005 is a clean pair; 2005-2006 has only two common journals
    for (const auto* journal : {"ja", "jb", "jc", "jd"}) {
        add_journal_year(records, journal, 2004, 3,
                         static_cast<std::int64_t>(journal[1]));
        add_journal_year(records, journal, 2005, 3,
                         static_cast<std::int64_t>(journal[1]) * 2);
    }
    add_journal_year(records, "ja", 2006, 3, 4);
    add_journal_year(records, "jb", 2006, 3, 9);
    const auto corpus = Corpus::from_records(std::move(records));

    const auto report = stability_report(corpus, "eco", 2004, 2006, {});
    CHECK(report.pairs_used == 1);
    CHECK(report.pairs_skipped == 1);
    REQUIRE(report.average_rho.has_value());
    CHECK(*report.average_rho == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a stable shock-free field correlates strongly year over year") {
    FieldSpec spec;
    spec.n_journals = 20;
    spec.year_first = 2004;
    spec.year_last = 2006;
    spec.articles_min = 55;
    spec.articles_max = 65;
    spec.mu_min = std::log(3.0);
    spec.mu_max = std::log(20.0);
    spec.sigma = 1.0;
    spec.drift = 0.05;
    spec.shock_rate = 0.0;
    spec.seed = 7777;
    const auto corpus = generate_corpus(spec);

    for (const auto mean : {MeanKind::arithmetic, MeanKind::geometric}) {
        const auto report = stability_report(corpus, "synthetic", 2004, 2006,
                                             {CountSource::citations, mean, 0});
        CHECK(report.pairs_used == 2);
        REQUIRE(report.average_rho.has_value());
        CHECK(*report.average_rho > 0.8);
    }
}

TEST_CASE("a report needs at least two years") {
    const auto corpus = Corpus::from_records({make("a1", "ja", 2004, 1)});
    CHECK_THROWS_AS(stability_report(corpus, "eco", 2004, 2004, {}), DataError);
}

TEST_CASE("an unknown subcategory yields a report with no usable pairs") {
    const auto corpus = Corpus::from_records({make("a1", "ja", 2004, 1)});
    const auto report = stability_report(corpus, "physics", 2004, 2006, {});
    CHECK(report.pairs_used == 0);
    CHECK(report.pairs_skipped == 2);
    CHECK_FALSE(report.average_rho.has_value());
}
