#include "doctest.h"

#include "ssimrl/classifier.hpp"
#include "ssimrl/errors.hpp"
#include "ssimrl/synthetic.hpp"

#include "test_util.hpp"

#include <array>
#include <cmath>
#include <vector>

using namespace ssimrl;

namespace {

Exemplar exemplar_of(const GrayImage& img, int digit, double fsim = 0.5, int round = 1) {
    return Exemplar{img, digit, fsim, round, 0};
}

// Pools whose only comparand is the given font image; every digit gets one
// so classify() never sees an empty comparand list.
std::array<ExemplarPool, 10> one_font_pools(const std::array<std::vector<GrayImage>, 10>& fonts) {
    std::array<ExemplarPool, 10> pools;
    for (int d = 0; d < 10; ++d) {
        pools[d].digit = d;
        pools[d].fonts = {fonts[d][0]};
    }
    return pools;
}

} // namespace

TEST_CASE("mean score is the weight-scaled sum over comparands divided by their count") {
    const auto fonts = make_font_templates();
    SsimParams params;

    ExemplarPool pool;
    pool.digit = 0;
    pool.fonts = {fonts[0][0]};
    pool.selected = {exemplar_of(fonts[0][1], 0), exemplar_of(fonts[0][2], 0)};
    FuzzyWeightTable table;
    table.digit = 0;
    table.weights = {0.25, 0.75};

    const GrayImage test = fonts[0][3];
    const double expected = (ssim_windowed(test, fonts[0][0], params) * 1.0 +
                             ssim_windowed(test, fonts[0][1], params) * 0.25 +
                             ssim_windowed(test, fonts[0][2], params) * 0.75) /
                            3.0;
    const double got = score_digit(test, pool, table, AblationMode::Full, 1.0, params);
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("max aggregate returns the largest weighted comparison") {
    const auto fonts = make_font_templates();
    SsimParams params;

    ExemplarPool pool;
    pool.digit = 4;
    pool.selected = {exemplar_of(fonts[4][0], 4), exemplar_of(fonts[4][1], 4)};
    FuzzyWeightTable table;
    table.digit = 4;
    table.weights = {0.25, 0.75};

    const GrayImage test = fonts[4][2];
    const double a = ssim_windowed(test, fonts[4][0], params) * 0.25;
    const double b = ssim_windowed(test, fonts[4][1], params) * 0.75;
    const double got =
        score_digit(test, pool, table, AblationMode::Full, 1.0, params, Aggregate::Max);
    CHECK(got == doctest::Approx(std::max(a, b)).epsilon(1e-12));
}

TEST_CASE("fonts carry weight 1 in every mode") {
    const auto fonts = make_font_templates();
    SsimParams params;

    // A pool of fonts only: the weighted modes must give exactly the same
    // score as the unweighted ones, because exemplar weights never apply
    // to fonts.
    ExemplarPool pool;
    pool.digit = 7;
    pool.fonts = fonts[7];
    FuzzyWeightTable table;
    table.digit = 7;

    const GrayImage test = fonts[7][0];
    const double unweighted = score_digit(test, pool, table, AblationMode::SsimOnly, 1.0, params);
    const double weighted = score_digit(test, pool, table, AblationMode::FuzzyOnly, 1.0, params);
    CHECK(weighted == unweighted);
}

TEST_CASE("unweighted modes ignore the weight table entirely") {
    const auto fonts = make_font_templates();
    SsimParams params;

    ExemplarPool pool;
    pool.digit = 2;
    pool.fonts = {fonts[2][0]};
    pool.selected = {exemplar_of(fonts[2][1], 2)};

    FuzzyWeightTable plain;
    plain.digit = 2;
    plain.weights = {0.25};
    FuzzyWeightTable other;
    other.digit = 2;
    other.weights = {0.75};

    const GrayImage test = fonts[2][2];
    CHECK(score_digit(test, pool, plain, AblationMode::RlOnly, 1.0, params) ==
          score_digit(test, pool, other, AblationMode::RlOnly, 1.0, params));
    CHECK(score_digit(test, pool, plain, AblationMode::FuzzyOnly, 1.0, params) !=
          score_digit(test, pool, other, AblationMode::FuzzyOnly, 1.0, params));
}

TEST_CASE("gamma discounts later-round exemplars inside the classifier") {
    const auto fonts = make_font_templates();
    SsimParams params;

    ExemplarPool pool;
    pool.digit = 5;
    pool.selected = {exemplar_of(fonts[5][0], 5, 0.5, 3)}; // round 3
    FuzzyWeightTable table;
    table.digit = 5;
    table.weights = {0.6};

    const GrayImage test = fonts[5][1];
    const double s = ssim_windowed(test, fonts[5][0], params);
    const double got = score_digit(test, pool, table, AblationMode::Full, 0.5, params);
    CHECK(got == doctest::Approx(s * 0.6 * 0.25).epsilon(1e-12)); // 0.5^2 discount
}

TEST_CASE("argmax ties resolve to the smaller digit") {
    const auto fonts = make_font_templates();
    auto pools = one_font_pools(fonts);
    // Give digits 2 and 5 the identical single comparand: their scores are
    // bit-identical for every test image.
    pools[5].fonts = pools[2].fonts;

    std::array<FuzzyWeightTable, 10> tables;
    for (int d = 0; d < 10; ++d) tables[d].digit = d;
    SsimParams params;
    const Classifier clf(pools, tables, AblationMode::SsimOnly, 1.0, params, 0.05);

    const ClassificationResult result = clf.classify(pools[2].fonts[0]);
    CHECK(result.scores[2] == result.scores[5]);
    CHECK(result.scores[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.predicted == 2);
    CHECK(result.runner_up == 5);
    CHECK(result.margin == 0.0);
    CHECK(result.uncertain); // margin 0 < threshold 0.05
}

TEST_CASE("margin is the gap to the runner-up and drives the uncertain flag") {
    const auto fonts = make_font_templates();
    const auto pools = one_font_pools(fonts);
    std::array<FuzzyWeightTable, 10> tables;
    for (int d = 0; d < 10; ++d) tables[d].digit = d;
    SsimParams params;

    HandwritingKnobs knobs;
    knobs.sloppy_fraction = 0.0;
    const auto data = make_handwritten_samples(1, 3, knobs);
    const GrayImage& test = data.images[6]; // a clean 6

    const Classifier strict(pools, tables, AblationMode::SsimOnly, 1.0, params, 1.0);
    const ClassificationResult r = strict.classify(test);

    // The reported margin must be the gap between the two best scores.
    double best = -2, second = -2;
    for (int d = 0; d < 10; ++d) {
        if (r.scores[d] > best) {
            second = best;
            best = r.scores[d];
        } else if (r.scores[d] > second) {
            second = r.scores[d];
        }
    }
    CHECK(r.scores[r.predicted] == best);
    CHECK(r.scores[r.runner_up] == second);
    CHECK(r.margin == doctest::Approx(best - second).epsilon(1e-12));
    CHECK(r.runner_up != r.predicted);
    CHECK(r.uncertain); // threshold 1.0 makes everything uncertain

    const Classifier lax(pools, tables, AblationMode::SsimOnly, 1.0, params, 0.0);
    CHECK_FALSE(lax.classify(test).uncertain); // margin >= 0 is never below 0
}

TEST_CASE("scaling every weight by k > 0 never changes a prediction") {
    // Pools of weighted exemplars only (no fixed-weight fonts), so the whole
    // weight vector scales and every score is homogeneous in k.
    HandwritingKnobs knobs;
    knobs.sloppy_fraction = 0.0;
    const auto train = make_handwritten_samples(3, 21, knobs);
    const auto test = make_handwritten_samples(10, 22, 0.25);

    std::array<ExemplarPool, 10> pools;
    std::array<FuzzyWeightTable, 10> base;
    for (int d = 0; d < 10; ++d) {
        pools[d].digit = d;
        base[d].digit = d;
        for (int i = 0; i < 3; ++i) {
            pools[d].selected.push_back(exemplar_of(train.images[d * 3 + i], d));
            base[d].weights.push_back(0.3 + 0.2 * i);
        }
    }

    SsimParams params;
    for (Aggregate agg : {Aggregate::Mean, Aggregate::Max}) {
        const Classifier reference(pools, base, AblationMode::Full, 1.0, params, 0.0, agg);
        for (double k : {0.01, 3.0, 250.0}) {
            auto scaled = base;
            for (auto& table : scaled)
                for (auto& w : table.weights) w *= k;
            const Classifier candidate(pools, scaled, AblationMode::Full, 1.0, params, 0.0, agg);
            for (std::size_t i = 0; i < test.images.size(); ++i) {
                const ClassificationResult a = reference.classify(test.images[i]);
                const ClassificationResult b = candidate.classify(test.images[i]);
                CHECK(a.predicted == b.predicted);
                CHECK(a.runner_up == b.runner_up);
            }
        }
    }
}

TEST_CASE("free classify matches the Classifier object") {
    const auto fonts = make_font_templates();
    const auto pools = one_font_pools(fonts);
    std::array<FuzzyWeightTable, 10> tables;
    for (int d = 0; d < 10; ++d) tables[d].digit = d;
    SsimParams params;

    HandwritingKnobs knobs;
    const auto data = make_handwritten_samples(2, 8, knobs);
    const Classifier clf(pools, tables, AblationMode::SsimOnly, 1.0, params, 0.05);
    for (const auto& img : data.images) {
        const ClassificationResult a = clf.classify(img);
        const ClassificationResult b =
            classify(img, pools, tables, AblationMode::SsimOnly, 1.0, params, 0.05);
        CHECK(a.predicted == b.predicted);
        CHECK(a.runner_up == b.runner_up);
        CHECK(a.margin == b.margin);
        CHECK(a.scores == b.scores);
        CHECK(a.uncertain == b.uncertain);
    }
}

TEST_CASE("a digit with no comparands cannot be scored") {
    std::array<ExemplarPool, 10> pools; // all empty
    std::array<FuzzyWeightTable, 10> tables;
    SsimParams params;
    const Classifier clf(pools, tables, AblationMode::SsimOnly, 1.0, params, 0.0);
    CHECK_THROWS_AS(clf.classify(GrayImage(28, 28, 0)), EmptyPoolError);
}

TEST_CASE("ablation mode helpers and names") {
    CHECK_FALSE(mode_uses_weights(AblationMode::SsimOnly));
    CHECK(mode_uses_weights(AblationMode::FuzzyOnly));
    CHECK_FALSE(mode_uses_weights(AblationMode::RlOnly));
    CHECK(mode_uses_weights(AblationMode::Full));

    CHECK_FALSE(mode_uses_selection(AblationMode::SsimOnly));
    CHECK_FALSE(mode_uses_selection(AblationMode::FuzzyOnly));
    CHECK(mode_uses_selection(AblationMode::RlOnly));
    CHECK(mode_uses_selection(AblationMode::Full));

    for (AblationMode mode : {AblationMode::SsimOnly, AblationMode::FuzzyOnly, AblationMode::RlOnly,
                              AblationMode::Full})
        CHECK(ablation_mode_from_string(to_string(mode)) == mode);
    CHECK(to_string(AblationMode::SsimOnly) == "ssim_only");
    CHECK(to_string(AblationMode::Full) == "full");
    CHECK_THROWS_AS(ablation_mode_from_string("everything"), ConfigError);
}
