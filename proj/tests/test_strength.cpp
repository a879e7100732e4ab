#include <doctest.h>

#include <nlohmann/json.hpp>

#include "leaguecast/errors.hpp"
#include "leaguecast/strength.hpp"
#include "support.hpp"

using namespace leaguecast;

namespace {

Dataset season(int teams, std::uint64_t seed) {
    return parse_csv(support::synthetic_season(support::team_names(teams), 2018, seed));
}

const TeamGoalAverages& averages_of(const std::vector<TeamGoalAverages>& all, const std::string& team) {
    for (const auto& a : all)
        if (a.team == team) return a;
    throw std::runtime_error("no " + team);
}

// Brute-force totals straight from the records.
struct Totals {
    double home_goals = 0, away_goals = 0;
};
Totals totals(const Dataset& d) {
    Totals t;
    for (const auto& r : d.records()) {
        t.home_goals += r.home_goals;
        t.away_goals += r.away_goals;
    }
    return t;
}

}  // namespace

TEST_SUITE("strength") {
    TEST_CASE("two-row home mean") {
        const auto d = parse_csv("HomeTeam,AwayTeam,FTHG,FTAG\nA,B,2,0\nA,C,1,1\nB,A,0,0\nC,B,1,0\nB,C,3,3\nC,A,0,2\n");
        const auto avg = team_goal_averages(d);
        const auto& a = averages_of(avg, "A");
        CHECK(a.home_scored == 1.5);
        CHECK(a.home_conceded == 0.5);
        CHECK(a.home_matches == 2);
        CHECK(a.away_scored == 1.0);
        CHECK(a.away_conceded == 0.0);
    }

    TEST_CASE("uniform league is neutral everywhere") {
        std::string content = "HomeTeam,AwayTeam,FTHG,FTAG\n";
        for (const auto& h : support::team_names(5))
            for (const auto& a : support::team_names(5))
                if (h != a) content += h + "," + a + ",1,1\n";
        const auto model = estimate_strengths(parse_csv(content));
        for (const auto& avg : model.averages) {
            CHECK(avg.home_scored == 1.0);
            CHECK(avg.home_conceded == 1.0);
            CHECK(avg.away_scored == 1.0);
            CHECK(avg.away_conceded == 1.0);
        }
        CHECK(model.league == LeagueAverages::from_means(1, 1, 1, 1));
        CHECK(model.league.overall_home == 1.0);
        CHECK(model.league.overall_away == 1.0);
        for (const auto& [team, s] : model.table.entries()) CHECK(s == StrengthVector::neutral());
    }

    TEST_CASE("league means are team-weighted") {
        std::vector<TeamGoalAverages> per_team{{"A", 1.0, 1.0, 1.0, 1.0, 1, 1}, {"B", 2.0, 1.0, 1.0, 1.0, 19, 19}};
        const auto l = league_averages(per_team);
        CHECK(l.home_scored == 1.5);
        CHECK(l.overall_home == doctest::Approx((1.5 + 1.0) / 2));
        CHECK(l.overall_away == 1.0);
    }

    TEST_CASE("zero league average is rejected") {
        std::vector<TeamGoalAverages> per_team{{"A", 0.0, 1.0, 1.0, 1.0, 1, 1}, {"B", 0.0, 1.0, 1.0, 1.0, 1, 1}};
        CHECK_THROWS_AS(league_averages(per_team), ZeroLeagueAverage);
        CHECK_THROWS_AS(LeagueAverages::from_means(1, 1, 0, 1), ZeroLeagueAverage);
    }

    TEST_CASE("one-sided teams are reported together") {
        const auto d = parse_csv("HomeTeam,AwayTeam,FTHG,FTAG\nA,B,1,0\nB,A,1,0\nA,C,1,0\nD,A,1,1\n");
        try {
            team_goal_averages(d);
            FAIL("expected OneSidedTeam");
        } catch (const OneSidedTeam& e) {
            CHECK(e.teams() == std::vector<std::string>{"C", "D"});
        }
    }

    TEST_CASE("ratio definition") {
        std::vector<TeamGoalAverages> per_team{{"A", 3.0, 1.0, 1.0, 2.0, 1, 1}};
        const auto l = LeagueAverages::from_means(1.5, 1.0, 1.0, 1.0);
        const auto s = normalize_strengths(per_team, l);
        CHECK(s[0].strength.home_attack == 2.0);
        CHECK(s[0].strength.away_defense == 2.0);
    }

    TEST_CASE("complete round robin: home scored equals away conceded") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto d = season(20, seed);
            const auto l = league_averages(team_goal_averages(d));
            CHECK(l.home_scored == doctest::Approx(l.away_conceded).epsilon(1e-12));
            CHECK(l.home_conceded == doctest::Approx(l.away_scored).epsilon(1e-12));
            CHECK(l.overall_home == doctest::Approx(l.home_scored).epsilon(1e-12));
            CHECK(l.overall_away == doctest::Approx(l.home_conceded).epsilon(1e-12));
            // Balanced schedule: team-weighted equals match-weighted.
            const auto t = totals(d);
            CHECK(l.home_scored == doctest::Approx(t.home_goals / d.size()).epsilon(1e-12));
            CHECK(l.away_scored == doctest::Approx(t.away_goals / d.size()).epsilon(1e-12));
        }
    }

    TEST_CASE("normalized components average to one") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto model = estimate_strengths(season(4 + static_cast<int>(seed), seed));
            double sums[4] = {0, 0, 0, 0};
            for (const auto& [team, s] : model.table.entries()) {
                sums[0] += s.home_attack;
                sums[1] += s.home_defense;
                sums[2] += s.away_attack;
                sums[3] += s.away_defense;
            }
            for (double sum : sums) CHECK(std::abs(sum / model.table.size() - 1.0) < 1e-12);
        }
    }

    TEST_CASE("scaling goals scales averages, not strengths") {
        const auto d = season(8, 3);
        std::vector<MatchRecord> tripled = d.records();
        for (auto& r : tripled) {
            r.home_goals *= 3;
            r.away_goals *= 3;
        }
        const auto base = estimate_strengths(d);
        const auto scaled = estimate_strengths(Dataset::from_records(tripled));
        for (std::size_t i = 0; i < base.averages.size(); ++i) {
            CHECK(scaled.averages[i].home_scored == doctest::Approx(3 * base.averages[i].home_scored));
            CHECK(scaled.averages[i].away_conceded == doctest::Approx(3 * base.averages[i].away_conceded));
        }
        for (const auto& [team, s] : base.table.entries()) {
            const auto t = *scaled.table.find(team);
            CHECK(t.home_attack == doctest::Approx(s.home_attack).epsilon(1e-12));
            CHECK(t.home_defense == doctest::Approx(s.home_defense).epsilon(1e-12));
            CHECK(t.away_attack == doctest::Approx(s.away_attack).epsilon(1e-12));
            CHECK(t.away_defense == doctest::Approx(s.away_defense).epsilon(1e-12));
        }
    }

    TEST_CASE("record order does not matter") {
        const auto csv = support::synthetic_season(support::team_names(12), 2018, 5);
        const auto a = estimate_strengths(parse_csv(csv));
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto b = estimate_strengths(parse_csv(support::shuffle_rows(csv, seed)));
            CHECK(a.table == b.table);
            CHECK(a.league == b.league);
        }
    }

    TEST_CASE("strength table resolution") {
        StrengthTable t({{"A", {1.2, 0.9, 1.1, 1.0}}});
        CHECK(t.resolve("A", UnknownTeamPolicy::Error).home_attack == 1.2);
        CHECK_THROWS_AS(t.resolve("Z", UnknownTeamPolicy::Error), UnknownTeam);
        CHECK(t.resolve("Z", UnknownTeamPolicy::Neutral) == StrengthVector::neutral());
        CHECK_THROWS_AS(t.set("B", {-0.1, 1, 1, 1}), DomainError);
        CHECK_THROWS_AS(t.set("B", {std::nan(""), 1, 1, 1}), DomainError);
    }

    TEST_CASE("CSV export and import") {
        const StrengthTable t({{"Man City", {0.797301, 0.890951, 0.958914, 1.005413}},
                               {"Newcastle", {0.945096, 0.890281, 0.791403, 1.006886}}});
        const auto text = strengths_to_csv(t);
        CHECK(text ==
              "Team,HomeAttack,HomeDefense,AwayAttack,AwayDefense\n"
              "Man City,0.797301,0.890951,0.958914,1.005413\n"
              "Newcastle,0.945096,0.890281,0.791403,1.006886\n");
        CHECK(strengths_from_csv(text) == t);
        CHECK_THROWS_AS(strengths_from_csv("Team,HomeAttack,HomeDefense,AwayAttack\nA,1,1,1\n"), MissingColumn);
        CHECK_THROWS_AS(strengths_from_csv("Team,HomeAttack,HomeDefense,AwayAttack,AwayDefense\nA,1,x,1,1\n"),
                        MalformedRow);
    }

    TEST_CASE("JSON export and import keep full precision") {
        const auto model = estimate_strengths(season(10, 11));
        const auto doc = strengths_to_json(model.table, model.league);
        const auto loaded = strengths_from_json(nlohmann::json::parse(doc.dump()));
        CHECK(loaded.table == model.table);
        REQUIRE(loaded.league.has_value());
        CHECK(*loaded.league == model.league);

        const auto bare = strengths_from_json(strengths_to_json(model.table));
        CHECK_FALSE(bare.league.has_value());

        try {
            strengths_from_json(nlohmann::json::parse(R"({"teams":[{"team":"A","home_attack":"x"}]})"));
            FAIL("expected SpecError");
        } catch (const SpecError& e) {
            CHECK(e.path() == "$.teams[0].home_attack");
        }
    }
}
