#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <vector>

#include "doctest.h"
#include "jifkit/errors.hpp"
#include "jifkit/metrics.hpp"
#include "jifkit/synth.hpp"

using namespace jifkit;

namespace {

FieldSpec small_spec() {
    FieldSpec spec;
    spec.n_journals = 5;
    spec.year_first = 2004;
    spec.year_last = 2006;
    spec.articles_min = 6;
    spec.articles_max = 12;
    spec.mu_min = 1.0;
    spec.mu_max = 2.0;
    spec.sigma = 1.0;
    spec.drift = 0.1;
    spec.seed = 77;
    return spec;
}

std::map<std::pair<std::string, int>, std::vector<std::int64_t>> counts_by_group(
    const Corpus& corpus) {
    std::map<std::pair<std::string, int>, std::vector<std::int64_t>> out;
    for (const auto& r : corpus.records())
        out[{r.journal_id, r.year}].push_back(r.citations);
    return out;
}

}  // namespace

TEST_CASE("field spec validation names the offending field") {
    CHECK_NOTHROW(small_spec().validate());

    auto spec = small_spec();
    spec.sigma = 0.0;
    CHECK_THROWS_WITH_AS(spec.validate(), "invalid field spec: sigma", DataError);

    spec = small_spec();
    spec.n_journals = 0;
    CHECK_THROWS_AS(spec.validate(), DataError);

    spec = small_spec();
    spec.articles_min = 0;
    CHECK_THROWS_AS(spec.validate(), DataError);

    spec = small_spec();
    spec.articles_max = 3;  // below articles_min
    CHECK_THROWS_AS(spec.validate(), DataError);

    spec = small_spec();
    spec.shock_rate = 1.5;
    CHECK_THROWS_AS(spec.validate(), DataError);

    spec = small_spec();
    spec.year_last = 2003;
    CHECK_THROWS_AS(spec.validate(), DataError);

    spec = small_spec();
    spec.mu_max = 0.5;  // below mu_min
    CHECK_THROWS_AS(spec.validate(), DataError);
}

TEST_CASE("generation is deterministic in the spec") {
    const auto a = generate_corpus(small_spec());
    const auto b = generate_corpus(small_spec());
    CHECK(a.records() == b.records());

    auto reseeded = small_spec();
    reseeded.seed = 78;
    CHECK(generate_corpus(reseeded).records() != a.records());
}

TEST_CASE("generated shape follows the spec") {
    const auto spec = small_spec();
    const auto corpus = generate_corpus(spec);

    CHECK(corpus.subcategories() == std::vector<std::string>{"synthetic"});
    CHECK(corpus.years("synthetic") == std::vector<int>{2004, 2005, 2006});
    CHECK(corpus.journals("synthetic", 2004).size() == spec.n_journals);

    const auto groups = counts_by_group(corpus);
    CHECK(groups.size() == spec.n_journals * 3);
    std::map<std::string, std::size_t> size_per_journal;
    for (const auto& [key, counts] : groups) {
        CHECK(counts.size() >= spec.articles_min);
        CHECK(counts.size() <= spec.articles_max);
        for (const auto c : counts) CHECK(c >= 0);
        // the per-journal article count is drawn once, not per year
        const auto [it, inserted] = size_per_journal.try_emplace(key.first, counts.size());
        if (!inserted) CHECK(it->second == counts.size());
    }
    CHECK(corpus.records()[0].readers.has_value() == false);
}

TEST_CASE("record count is journals x years x articles") {
    FieldSpec spec;
    spec.n_journals = 50;
    spec.year_first = 2004;
    spec.year_last = 2014;
    spec.articles_min = 30;
    spec.articles_max = 30;
    spec.mu_min = 1.0;
    spec.mu_max = 2.5;
    spec.seed = 31337;
    CHECK(generate_corpus(spec).size() == 16500);
}

TEST_CASE("a vanishing sigma degenerates to one constant count") {
    auto spec = small_spec();
    // sigma stays positive for validation but is absorbed by double
    // addition, and exp(log(6)) lands on 6 exactly
    spec.mu_min = spec.mu_max = std::log(6.0);
    spec.sigma = 1e-18;
    spec.drift = 0.0;
    const auto corpus = generate_corpus(spec);
    for (const auto& r : corpus.records()) CHECK(r.citations == 5);
}

TEST_CASE("shock_rate one plants the outlier in every journal-year") {
    auto spec = small_spec();
    spec.shock_rate = 1.0;
    spec.shock_count = 9999;
    const auto corpus = generate_corpus(spec);
    for (const auto& [key, counts] : counts_by_group(corpus)) {
        (void)key;
        CHECK(std::count(counts.begin(), counts.end(), 9999) >= 1);
    }
}

TEST_CASE("shock_rate zero plants none") {
    auto spec = small_spec();
    spec.shock_rate = 0.0;
    spec.shock_count = 9999;
    const auto corpus = generate_corpus(spec);
    for (const auto& r : corpus.records()) CHECK(r.citations != 9999);
}

TEST_CASE("reader counts appear only when asked for") {
    auto spec = small_spec();
    spec.readers = true;
    spec.readers_mu_min = 1.0;
    spec.readers_mu_max = 2.0;
    spec.readers_sigma = 0.5;
    const auto corpus = generate_corpus(spec);
    for (const auto& r : corpus.records()) {
        REQUIRE(r.readers.has_value());
        CHECK(*r.readers >= 0);
    }

    // the reader stream must not perturb the citation stream
    auto plain = small_spec();
    const auto without = generate_corpus(plain);
    REQUIRE(without.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i)
        CHECK(corpus.records()[i].citations == without.records()[i].citations);
}

TEST_CASE("spec files round-trip") {
    const auto dir = std::filesystem::temp_directory_path() / "jifkit_synth_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "field.spec";

    auto spec = small_spec();
    spec.readers = true;
    spec.readers_mu_min = 0.25;
    spec.readers_mu_max = 1.75;
    spec.readers_sigma = 0.5;
    spec.drift = 0.125;
    spec.shock_rate = 0.05;
    spec.shock_count = 170;
    spec.subcategory = "taxonomy";
    save_field_spec(spec, path);
    CHECK(load_field_spec(path) == spec);
}

TEST_CASE("spec files reject unknown keys and bad lines") {
    const auto dir = std::filesystem::temp_directory_path() / "jifkit_synth_test";
    std::filesystem::create_directories(dir);

    const auto unknown = dir / "unknown.spec";
    save_field_spec(small_spec(), unknown);
    {
        std::ofstream out(unknown, std::ios::app);
        out << "surprise = 1\n";
    }
    CHECK_THROWS_WITH_AS(load_field_spec(unknown), "unknown key: surprise", DataError);

    const auto bad = dir / "bad.spec";
    {
        std::ofstream out(bad);
        out << "n_journals\n";
    }
    CHECK_THROWS_AS(load_field_spec(bad), DataError);
}

TEST_CASE("low_median picks the lower middle order statistic") {
    CHECK(low_median(std::vector<std::int64_t>{3, 1, 2}) == 2);
    CHECK(low_median(std::vector<std::int64_t>{1, 2, 3, 4}) == 2);
    CHECK(low_median(std::vector<std::int64_t>{5}) == 5);
    CHECK(low_median(std::vector<std::int64_t>{30, 0, 0, 0, 0, 0, 0, 0, 0, 0}) == 0);
    CHECK_THROWS_AS(low_median({}), DataError);
}

TEST_CASE("apply_shock swaps exactly one median-valued element") {
    const std::vector<std::int64_t> baseline{30, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    const auto shocked = apply_shock(baseline, 170);

    auto expected = baseline;
    expected[1] = 170;  // first element equal to the low median
    CHECK(shocked == expected);

    // a shock at the median value is a no-op
    CHECK(apply_shock(std::vector<std::int64_t>{1, 2, 3}, 2) ==
          std::vector<std::int64_t>{1, 2, 3});
}

TEST_CASE("shock outcome values follow directly from the means") {
    auto exp = run_shock_experiment(systematics_preset());

    CHECK(exp.arithmetic.value_before == 3.0);   // 30 over 10 articles
    CHECK(exp.arithmetic.value_after == 20.0);   // 200 over 10 articles
    CHECK(exp.geometric.value_before ==
          doctest::Approx(std::pow(31.0, 0.1) - 1.0).epsilon(1e-13));
    CHECK(exp.geometric.value_after ==
          doctest::Approx(1.3574135769856854).epsilon(1e-13));

    CHECK(exp.arithmetic.value_delta() == 17.0);
    CHECK(exp.geometric.value_delta() < 1.0);

    // same-year ranks with and without the outlier, 20 journals in all
    CHECK(exp.arithmetic.rank_before == 15.0);
    CHECK(exp.arithmetic.rank_after == 1.0);
    CHECK(exp.geometric.rank_before == 20.0);
    CHECK(exp.geometric.rank_after == 15.0);
    CHECK(exp.arithmetic.rank_displacement() > exp.geometric.rank_displacement());
}

TEST_CASE("the fly preset towers a single article over a low baseline") {
    const auto exp = fly_preset();
    REQUIRE(exp.baseline.size() == 52);
    CHECK(low_median(exp.baseline) == 0);

    const auto shocked = apply_shock(exp.baseline, exp.shock_count);
    const double delta_a = arithmetic_jif(shocked) - arithmetic_jif(exp.baseline);
    const double delta_g = geometric_jif(shocked) - geometric_jif(exp.baseline);
    CHECK(delta_a == doctest::Approx(192.0 / 52.0).epsilon(1e-13));
    CHECK(delta_a / delta_g > 5.0);
}

TEST_CASE("a median-valued shock displaces nothing") {
    auto exp = systematics_preset();
    exp.shock_count = low_median(exp.baseline);
    exp = run_shock_experiment(std::move(exp));

    CHECK(exp.arithmetic.value_delta() == 0.0);
    CHECK(exp.geometric.value_delta() == 0.0);
    CHECK(exp.arithmetic.rank_displacement() == 0.0);
    CHECK(exp.geometric.rank_displacement() == 0.0);
}

TEST_CASE("a shock experiment needs two field years") {
    auto exp = systematics_preset();
    exp.field.year_last = exp.field.year_first;
    CHECK_THROWS_AS(run_shock_experiment(std::move(exp)), DataError);
}
