#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "leaguecast/errors.hpp"
#include "leaguecast/scoremodel.hpp"
#include "oracle.hpp"

using namespace leaguecast;

TEST_SUITE("scoremodel") {
    TEST_CASE("pmf reference points") {
        CHECK(poisson_pmf(0, 0.0) == 1.0);
        CHECK(poisson_pmf(3, 0.0) == 0.0);
        // 33.4% in the worked example.
        CHECK(poisson_pmf(1, 1.5) == doctest::Approx(0.334695240222645).epsilon(1e-12));
        // The worked example prints 27.8% here; λ²e^{-λ}/2 gives 26.89%.
        CHECK(poisson_pmf(2, 1.842) == doctest::Approx(0.268892581370115).epsilon(1e-12));
        CHECK(std::abs(poisson_pmf(2, 1.842) - 0.278) > 0.005);
    }

    TEST_CASE("pmf agrees with the direct formula") {
        for (double rate : {0.05, 0.5, 1.0, 1.842, 3.7, 8.0, 14.5, 20.0}) {
            for (int x = 0; x <= 30; ++x) {
                const double expected = static_cast<double>(oracle::pmf(x, rate));
                CHECK(poisson_pmf(x, rate) == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("pmf recurrence holds across the supported range") {
        for (double rate = 0.1; rate <= 20.0; rate += 0.7) {
            const auto row = poisson_pmf_row(rate, 31);
            for (int x = 0; x <= 30; ++x) {
                const double lhs = row[x + 1] * (x + 1);
                const double rhs = row[x] * rate;
                CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
            }
        }
    }

    TEST_CASE("pmf domain errors") {
        CHECK_THROWS_AS(poisson_pmf(-1, 1.0), DomainError);
        CHECK_THROWS_AS(poisson_pmf(1, -0.5), DomainError);
        CHECK_THROWS_AS(poisson_pmf(1, INFINITY), DomainError);
        // Large rates fall back to log space instead of underflowing.
        CHECK(poisson_pmf(800, 800.0) == doctest::Approx(static_cast<double>(oracle::pmf(800, 800.0L))).epsilon(1e-9));
    }

    TEST_CASE("rates multiply strengths and the venue multiplier") {
        const auto neutral = StrengthVector::neutral();
        const auto l13 = LeagueAverages::from_multipliers(1.3, 1.3);
        const auto r = match_rates(neutral, neutral, l13);
        CHECK(r.home == 1.3);
        CHECK(r.away == 1.3);

        const auto l15 = LeagueAverages::from_multipliers(1.5, 1.0);
        const StrengthVector newcastle{0.945096, 0.890281, 0.791403, 1.006886};
        const StrengthVector city_0910{1.271318, 0.980392, 1.568627, 0.775194};
        CHECK(match_rates(newcastle, neutral, l15).home == doctest::Approx(1.417644).epsilon(1e-12));
        CHECK(match_rates(city_0910, neutral, l15).home == doctest::Approx(1.906977).epsilon(1e-12));

        const StrengthVector home{1.2, 0.8, 1.0, 1.0};
        const StrengthVector away{1.0, 1.0, 1.1, 0.9};
        const auto l = LeagueAverages::from_multipliers(1.6, 1.1);
        const auto hr = match_rates(home, away, l);
        CHECK(hr.home == doctest::Approx(1.2 * 0.9 * 1.6));
        CHECK(hr.away == doctest::Approx(1.1 * 0.8 * 1.1));
    }

    TEST_CASE("equal rates give equal win probabilities") {
        for (double rate : {0.0, 0.3, 1.0, 2.7, 4.0}) {
            const auto f = forecast({rate, rate});
            CHECK(f.prob_home_win == f.prob_away_win);
            CHECK(f.expected_points_home == f.expected_points_away);
        }
    }

    TEST_CASE("unit rates against the brute-force grid") {
        const auto f = forecast({1.0, 1.0}, 10);
        // Frozen from a 30-digit evaluation of the 11×11 grid.
        CHECK(f.prob_draw == doctest::Approx(0.308508322553671).epsilon(1e-12));
        CHECK(f.prob_home_win == doctest::Approx(0.345745828675398).epsilon(1e-12));
        CHECK(f.prob_away_win == doctest::Approx(0.345745828675398).epsilon(1e-12));
        CHECK(f.expected_points_home == doctest::Approx(1.345745808579866).epsilon(1e-12));
        CHECK(f.grid_coverage == doctest::Approx(0.999999979904467).epsilon(1e-12));
        // The draw mass is e^{-2}·I0(2) up to truncation.
        CHECK(std::abs(f.prob_draw - 0.308508322553671) < 1e-12);
        CHECK(f.goal_cap == 10);
    }

    TEST_CASE("scoreline from the worked example") {
        const MatchRates r{1.842, 1.5};
        // pmf(2, 1.842)·pmf(1, 1.5); the example prints 9.2% from its 27.8%.
        CHECK(scoreline_probability(r, 2, 1) == doctest::Approx(0.0899970671157578).epsilon(1e-12));
        const auto grid = score_grid(r, 10);
        CHECK(grid[2][1] == scoreline_probability(r, 2, 1));
        CHECK(scoreline_probability(r, -1, 0) == 0.0);
    }

    TEST_CASE("forecast matches the oracle grid") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> rate(0.0, 6.0);
        for (int i = 0; i < 200; ++i) {
            const double h = rate(rng), a = rate(rng);
            const int cap = 1 + static_cast<int>(rng() % 15);
            const auto f = forecast({h, a}, cap);
            const auto o = oracle::grid(h, a, cap);
            CHECK(f.prob_home_win == doctest::Approx(static_cast<double>(o.home)).epsilon(1e-11));
            CHECK(f.prob_away_win == doctest::Approx(static_cast<double>(o.away)).epsilon(1e-11));
            CHECK(f.prob_draw == doctest::Approx(static_cast<double>(o.draw)).epsilon(1e-11));
        }
    }

    TEST_CASE("forecast invariants") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> rate(0.0, 8.0);
        for (int i = 0; i < 500; ++i) {
            const auto f = forecast({rate(rng), rate(rng)}, 1 + static_cast<int>(rng() % 12));
            for (double p : {f.prob_home_win, f.prob_away_win, f.prob_draw}) {
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
            }
            CHECK(f.grid_coverage <= 1.0 + 1e-15);
            CHECK(f.prob_home_win + f.prob_away_win + f.prob_draw == f.grid_coverage);
            CHECK(f.expected_points_home == 3.0 * f.prob_home_win + f.prob_draw);
            CHECK(f.expected_points_away == 3.0 * f.prob_away_win + f.prob_draw);
            const double total = f.expected_points_home + f.expected_points_away;
            CHECK(total >= 2.0 * f.grid_coverage - 1e-12);
            CHECK(total <= 3.0 * f.grid_coverage + 1e-12);
            CHECK(std::abs(total - (3.0 * f.grid_coverage - f.prob_draw)) < 1e-12);
        }
    }

    TEST_CASE("grid coverage") {
        // Tight near the usual scoring rates.
        for (double h = 0.1; h <= 2.5; h += 0.1)
            for (double a = 0.1; a <= 2.5; a += 0.1) CHECK(forecast({h, a}, 10).grid_coverage >= 1.0 - 1e-4);
        // At rate 4 the cap truncates about 0.28% per side, matching the
        // product of the two Poisson CDFs.
        double cdf = 0.0;
        for (int x = 0; x <= 10; ++x) cdf += static_cast<double>(oracle::pmf(x, 4.0L));
        CHECK(forecast({4.0, 4.0}, 10).grid_coverage == doctest::Approx(cdf * cdf).epsilon(1e-12));
        // Never shrinks as the cap grows.
        for (double h : {0.5, 2.0, 4.0, 7.0}) {
            double previous = 0.0;
            for (int cap = 1; cap <= 25; ++cap) {
                const double c = forecast({h, 1.3}, cap).grid_coverage;
                CHECK(c >= previous);
                previous = c;
            }
        }
    }

    TEST_CASE("zero rates") {
        const auto f = forecast({0.0, 0.0});
        CHECK(f.prob_draw == 1.0);
        CHECK(f.prob_home_win == 0.0);
        CHECK(f.expected_points_home == 1.0);
        const auto g = forecast({2.0, 0.0});
        CHECK(g.prob_away_win == 0.0);
        CHECK(g.prob_draw == doctest::Approx(std::exp(-2.0)));
    }

    TEST_CASE("goal cap must be positive") {
        CHECK_THROWS_AS(forecast({1.0, 1.0}, 0), DomainError);
        CHECK_NOTHROW(forecast({1.0, 1.0}, 1));
    }

    TEST_CASE("expected points move the right way with each rate") {
        for (double away = 0.75; away <= 5.0; away += 0.25) {
            double previous = -1.0;
            for (double home = 0.05; home <= 5.0; home += 0.05) {
                const double p = forecast({home, away}).expected_points_home;
                CHECK(p > previous);
                previous = p;
            }
        }
        for (double home = 0.25; home <= 5.0; home += 0.25) {
            double previous = 4.0;
            for (double away = 0.05; away <= 5.0; away += 0.05) {
                const double p = forecast({home, away}).expected_points_home;
                CHECK(p < previous);
                previous = p;
            }
        }
    }

    TEST_CASE("truncation breaks home monotonicity for a weak away side") {
        // Cap 10 drops more home-win mass than the extra rate adds.
        CHECK(forecast({5.0, 0.25}).expected_points_home < forecast({4.7, 0.25}).expected_points_home);
        CHECK(forecast({5.0, 0.5}).expected_points_home < forecast({4.95, 0.5}).expected_points_home);
        for (double away : {0.25, 0.5}) {
            double previous = -1.0;
            for (double home = 0.05; home <= 5.0; home += 0.05) {
                const double p = forecast({home, away}, 40).expected_points_home;
                CHECK(p > previous);
                previous = p;
            }
        }
    }

    TEST_CASE("predict_match resolves teams") {
        const StrengthTable table({{"City", {0.797301, 0.890951, 0.958914, 1.005413}},
                                   {"Newcastle", {0.945096, 0.890281, 0.791403, 1.006886}}});
        const auto league = LeagueAverages::from_multipliers(1.37, 1.37);
        const auto f = predict_match("City", "Newcastle", table, league);
        const double rate_home = 0.797301 * 1.006886 * 1.37;
        const double rate_away = 0.791403 * 0.890951 * 1.37;
        const auto o = oracle::grid(rate_home, rate_away, 10);
        CHECK(f.rates.home == doctest::Approx(rate_home).epsilon(1e-14));
        CHECK(f.rates.away == doctest::Approx(rate_away).epsilon(1e-14));
        CHECK(f.prob_home_win == doctest::Approx(static_cast<double>(o.home)).epsilon(1e-12));
        CHECK(f.prob_draw == doctest::Approx(static_cast<double>(o.draw)).epsilon(1e-12));
        CHECK(f.expected_points_away == doctest::Approx(static_cast<double>(o.points_away())).epsilon(1e-12));

        const auto neutral = predict_match("X", "Y", table, LeagueAverages::from_multipliers(1, 1),
                                           UnknownTeamPolicy::Neutral);
        CHECK(neutral.prob_home_win == neutral.prob_away_win);
        CHECK(neutral.expected_points_home == neutral.expected_points_away);

        try {
            predict_match("City", "Leeds", table, league);
            FAIL("expected UnknownTeam");
        } catch (const UnknownTeam& e) {
            CHECK(e.team() == "Leeds");
        }
    }

    TEST_CASE("forecast JSON carries every field") {
        const auto f = forecast({1.417644, 1.1}, 12);
        const auto j = to_json(f);
        for (const char* key : {"lambda_home", "lambda_away", "prob_home_win", "prob_away_win", "prob_draw",
                                "expected_points_home", "expected_points_away", "grid_coverage", "goal_cap"}) {
            CHECK(j.contains(key));
        }
        const auto back = forecast_from_json(nlohmann::json::parse(j.dump()));
        CHECK(back.prob_home_win == f.prob_home_win);
        CHECK(back.grid_coverage == f.grid_coverage);
        CHECK(back.goal_cap == 12);
    }
}
