#pragma once

// Fixture lists and expected-points standings.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "leaguecast/scoremodel.hpp"

namespace leaguecast {

struct Fixture {
    std::string home_team;
    std::string away_team;

    friend auto operator<=>(const Fixture&, const Fixture&) = default;
};

struct StandingsRow {
    int rank = 0;
    std::string team;
    double expected_points = 0.0;
    double expected_goal_diff = 0.0;
};

struct StandingsTable {
    std::vector<StandingsRow> rows;
    std::size_t fixtures_count = 0;
    double total_coverage = 0.0;  // mean grid coverage over fixtures

    const StandingsRow* find(std::string_view team) const;
};

struct TeamTally {
    double points = 0.0;
    double goal_diff = 0.0;
};

/// Every ordered pair once, sorted by home then away. Throws TooFewTeams.
std::vector<Fixture> round_robin_fixtures(const std::set<std::string>& teams);

/// HomeTeam/AwayTeam CSV in file order. Throws MissingColumn, MalformedRow.
std::vector<Fixture> load_fixtures(std::string_view content);

/// Points descending, then goal difference descending, then name ascending.
StandingsTable rank_table(const std::map<std::string, TeamTally>& accumulated);

struct SimulationOptions {
    int goal_cap = kDefaultGoalCap;
    UnknownTeamPolicy policy = UnknownTeamPolicy::Error;
};

/// Per-fixture forecasts in fixture order, for auditing.
std::vector<MatchForecast> forecast_fixtures(const std::vector<Fixture>& fixtures, const StrengthTable& strengths,
                                             const LeagueAverages& league, const SimulationOptions& options = {});

/// Accumulates expected points and λ differences per team and ranks them.
/// The result does not depend on fixture order. Unknown teams throw
/// UnknownTeam naming the fixture.
StandingsTable simulate_standings(const std::vector<Fixture>& fixtures, const StrengthTable& strengths,
                                  const LeagueAverages& league, const SimulationOptions& options = {});

// --- output ------------------------------------------------------------

std::string standings_to_text(const StandingsTable& table);
std::string standings_to_csv(const StandingsTable& table);
nlohmann::json to_json(const StandingsTable& table);
StandingsTable standings_from_json(const nlohmann::json& doc);

}  // namespace leaguecast
