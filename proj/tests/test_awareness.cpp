#include <doctest.h>

#include <cmath>
#include <optional>
#include <vector>

#include "alertswarm/awareness.hpp"
#include "alertswarm/errors.hpp"
#include "alertswarm/rng.hpp"

using namespace alertswarm;
using namespace alertswarm::awareness;

namespace {

// Independent Fleiss oracle: expand each subject row into individual rater
// assignments and count agreeing rater pairs explicitly.
double fleiss_oracle(const std::vector<std::vector<int>>& counts) {
    const std::size_t subjects = counts.size();
    const std::size_t categories = counts.front().size();
    std::size_t raters = 0;
    for (int c : counts.front()) raters += static_cast<std::size_t>(c);

    double p_bar = 0.0;
    std::vector<double> totals(categories, 0.0);
    for (const auto& row : counts) {
        std::vector<int> assignments;
        for (std::size_t cat = 0; cat < categories; ++cat) {
            for (int i = 0; i < row[cat]; ++i) assignments.push_back(static_cast<int>(cat));
            totals[cat] += row[cat];
        }
        int agreeing_pairs = 0;
        int pairs = 0;
        for (std::size_t a = 0; a < assignments.size(); ++a) {
            for (std::size_t b = a + 1; b < assignments.size(); ++b) {
                ++pairs;
                if (assignments[a] == assignments[b]) ++agreeing_pairs;
            }
        }
        p_bar += static_cast<double>(agreeing_pairs) / static_cast<double>(pairs);
    }
    p_bar /= static_cast<double>(subjects);

    double p_e = 0.0;
    for (double t : totals) {
        const double p = t / static_cast<double>(subjects * raters);
        p_e += p * p;
    }
    return (p_bar - p_e) / (1.0 - p_e);
}

// Reference EWMA: start at the 0.5 prior, newest response weighted alpha.
double ewma_oracle(const std::vector<double>& agreements, double alpha) {
    double v = 0.5;
    for (double a : agreements) v = (1.0 - alpha) * v + alpha * (a + 1.0) / 2.0;
    return v;
}

InteractionLog log_from_agreements(const std::vector<double>& agreements) {
    InteractionLog log;
    Tick t = 1;
    for (double a : agreements) {
        log.append(InteractionEntry{t++, true, true, a});
    }
    return log;
}

}  // namespace

TEST_CASE("fleiss kappa: unanimous single category is degenerate, resolved to 1") {
    // 3 subjects, 4 raters, everyone picks category 0.
    const std::vector<std::vector<int>> counts(3, {4, 0, 0, 0});
    double kappa = 0.0;
    try {
        kappa = fleiss_kappa(counts);
        FAIL("expected DegenerateAgreement");
    } catch (const DegenerateAgreement& e) {
        kappa = e.mean_agreement() == 1.0 ? 1.0 : -2.0;
    }
    CHECK(kappa == 1.0);
}

TEST_CASE("fleiss kappa: systematic disagreement gives -1") {
    // 2 subjects, 2 raters, 2 categories, each row [1,1]: P=0, Pe=0.5.
    const std::vector<std::vector<int>> counts(2, {1, 1});
    CHECK(fleiss_kappa(counts) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("fleiss kappa matches the pair-counting oracle") {
    // 5 subjects, 3 raters, 3 categories.
    const std::vector<std::vector<int>> counts = {
        {3, 0, 0}, {1, 1, 1}, {0, 2, 1}, {2, 1, 0}, {0, 0, 3},
    };
    const double expected = fleiss_oracle(counts);
    CHECK(std::abs(fleiss_kappa(counts) - expected) < 1e-12);

    RngStream rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t subjects = 2 + rng.next_below(6);
        const std::size_t cats = 2 + rng.next_below(4);
        const std::size_t raters = 2 + rng.next_below(5);
        std::vector<std::vector<int>> m(subjects, std::vector<int>(cats, 0));
        for (auto& row : m) {
            for (std::size_t r = 0; r < raters; ++r) ++row[rng.next_below(static_cast<std::uint32_t>(cats))];
        }
        try {
            const double got = fleiss_kappa(m);
            CHECK(std::abs(got - fleiss_oracle(m)) < 1e-12);
            CHECK(got <= 1.0 + 1e-12);
        } catch (const DegenerateAgreement&) {
            // all raters in one category; oracle would divide by zero too
        }
    }
}

TEST_CASE("fleiss kappa is invariant under row and column permutation") {
    const std::vector<std::vector<int>> counts = {
        {3, 0, 1}, {1, 2, 1}, {0, 2, 2}, {2, 1, 1},
    };
    const double base = fleiss_kappa(counts);

    std::vector<std::vector<int>> rows_shuffled = {counts[2], counts[0], counts[3],
                                                   counts[1]};
    CHECK(std::abs(fleiss_kappa(rows_shuffled) - base) < 1e-12);

    std::vector<std::vector<int>> cols_shuffled;
    for (const auto& row : counts) cols_shuffled.push_back({row[2], row[0], row[1]});
    CHECK(std::abs(fleiss_kappa(cols_shuffled) - base) < 1e-12);
}

TEST_CASE("fleiss kappa rejects malformed matrices") {
    CHECK_THROWS_AS(fleiss_kappa({{2, 0}, {1, 1}, {2, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(fleiss_kappa({{3}, {3}}), std::invalid_argument);
    CHECK_THROWS_AS(fleiss_kappa({{1, 0}, {0, 1}}), std::invalid_argument);  // n = 1
}

TEST_CASE("responsiveness: full, silent, and partial windows") {
    InteractionLog log;
    for (Tick t = 1; t <= 4; ++t) log.append({t, true, true, 1.0});
    CHECK(responsiveness_in_window(log, 4, 20) == 1.0);

    InteractionLog silent;
    for (Tick t = 1; t <= 4; ++t) silent.append({t, true, false, {}});
    CHECK(responsiveness_in_window(silent, 4, 20) == 0.0);

    InteractionLog partial;  // 5 queries, 3 responses
    partial.append({1, true, true, 1.0});
    partial.append({2, true, false, {}});
    partial.append({3, true, true, -1.0});
    partial.append({4, true, false, {}});
    partial.append({5, true, true, 1.0});
    CHECK(responsiveness_in_window(partial, 5, 20) == doctest::Approx(0.6));
}

TEST_CASE("responsiveness: no queries in window means 1.0") {
    InteractionLog log;
    CHECK(responsiveness_in_window(log, 100, 20) == 1.0);
    log.append({1, true, false, {}});
    // the only query is far outside the trailing window
    CHECK(responsiveness_in_window(log, 100, 20) == 1.0);
}

TEST_CASE("responsiveness depends only on entries inside the window") {
    InteractionLog inside;
    inside.append({90, true, true, 1.0});
    inside.append({95, true, false, {}});

    InteractionLog with_old;
    with_old.append({10, true, false, {}});  // outside (80, 100]
    with_old.append({90, true, true, 1.0});
    with_old.append({95, true, false, {}});

    CHECK(responsiveness_in_window(inside, 100, 20) ==
          responsiveness_in_window(with_old, 100, 20));
}

TEST_CASE("truthfulness: empty log is the uninformed prior") {
    InteractionLog log;
    CHECK(truthfulness_ewma(log, 0.3) == 0.5);
    // entries without agreement do not move the score
    log.append({1, true, false, {}});
    log.append({2, true, true, {}});
    CHECK(truthfulness_ewma(log, 0.3) == 0.5);
}

TEST_CASE("truthfulness: all-agreeing log converges to 1 and 1 is a fixed point") {
    for (double alpha : {0.1, 0.3, 0.5, 0.9, 1.0}) {
        std::vector<double> agreements(200, 1.0);
        const double v = truthfulness_ewma(log_from_agreements(agreements), alpha);
        CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
        // fixed point: one more +1 cannot decrease it
        agreements.push_back(1.0);
        CHECK(truthfulness_ewma(log_from_agreements(agreements), alpha) >= v);
    }
}

TEST_CASE("truthfulness matches the hand EWMA oracle") {
    // [+1, -1] oldest-first at alpha = 0.5:
    //   0.5*0 + 0.5*(0.5*1 + 0.5*0.5) = 0.375
    const std::vector<double> agreements = {1.0, -1.0};
    CHECK(ewma_oracle(agreements, 0.5) == 0.375);
    CHECK(truthfulness_ewma(log_from_agreements(agreements), 0.5) == 0.375);

    RngStream rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a;
        const std::size_t len = rng.next_below(30);
        for (std::size_t i = 0; i < len; ++i) {
            a.push_back(rng.next_double() * 2.0 - 1.0);
        }
        const double alpha = 0.05 + 0.95 * rng.next_double();
        CHECK(std::abs(truthfulness_ewma(log_from_agreements(a), alpha) -
                       ewma_oracle(a, alpha)) < 1e-12);
    }
}

TEST_CASE("truthfulness is monotone in appended agreement") {
    RngStream rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a;
        const std::size_t len = rng.next_below(20);
        for (std::size_t i = 0; i < len; ++i) a.push_back(rng.next_double() * 2.0 - 1.0);
        const double alpha = 0.05 + 0.9 * rng.next_double();
        const double before = truthfulness_ewma(log_from_agreements(a), alpha);

        auto plus = a;
        plus.push_back(1.0);
        CHECK(truthfulness_ewma(log_from_agreements(plus), alpha) >= before);

        auto minus = a;
        minus.push_back(-1.0);
        CHECK(truthfulness_ewma(log_from_agreements(minus), alpha) <= before);
    }
}

TEST_CASE("scores stay in [0,1] under arbitrary logs") {
    RngStream rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        InteractionLog log;
        Tick t = 1;
        const std::size_t len = rng.next_below(50);
        for (std::size_t i = 0; i < len; ++i) {
            InteractionEntry e;
            e.tick = t;
            t += 1 + rng.next_below(3);
            e.queried = rng.bernoulli(0.8);
            e.responded = rng.bernoulli(0.5);
            if (e.responded && rng.bernoulli(0.8)) {
                e.agreement = rng.next_double() * 2.0 - 1.0;
            }
            log.append(e);
        }
        const Tick now = t + rng.next_below(10);
        const double resp = responsiveness_in_window(log, now, 1 + rng.next_below(40));
        const double truth = truthfulness_ewma(log, 0.05 + 0.95 * rng.next_double());
        CHECK(resp >= 0.0);
        CHECK(resp <= 1.0);
        CHECK(truth >= 0.0);
        CHECK(truth <= 1.0);
    }
}

TEST_CASE("interaction log validates entries") {
    InteractionLog log;
    log.append({5, true, true, 0.5});
    CHECK_THROWS_AS(log.append({3, true, false, {}}), std::invalid_argument);
    CHECK_THROWS_AS(log.append({6, true, false, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(log.append({6, true, true, 1.5}), std::invalid_argument);
}

TEST_CASE("reputation examples") {
    CHECK(update_reputation({1.0, 1.0, 10}).value == 1.0);
    CHECK(update_reputation({0.5, 0.8, 4}).value == doctest::Approx(0.4));
    CHECK(update_reputation({0.9, 0.9, 0}).value == 0.5);  // never observed
}

TEST_CASE("score_response: match, mismatch, subject mismatch") {
    const Belief own{3, 0, 1, 10};
    CHECK(score_response(own, Belief{3, 0, 2, 10}) == 1.0);
    CHECK(score_response(own, Belief{3, 1, 2, 10}) == -1.0);
    CHECK_THROWS_AS(score_response(own, Belief{7, 0, 2, 10}), SubjectMismatch);
}
