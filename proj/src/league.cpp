#include "leaguecast/league.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "leaguecast/csv.hpp"
#include "leaguecast/errors.hpp"
#include "json_util.hpp"

namespace leaguecast {

const StandingsRow* StandingsTable::find(std::string_view team) const {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const StandingsRow& r) { return r.team == team; });
    return it == rows.end() ? nullptr : &*it;
}

std::vector<Fixture> round_robin_fixtures(const std::set<std::string>& teams) {
    if (teams.size() < 2) throw TooFewTeams(teams.size());
    std::vector<Fixture> out;
    out.reserve(teams.size() * (teams.size() - 1));
    for (const auto& home : teams)
        for (const auto& away : teams)
            if (home != away) out.push_back({home, away});
    return out;
}

std::vector<Fixture> load_fixtures(std::string_view content) {
    const auto rows = csv::read(content);
    if (rows.empty()) throw EmptyFile();
    const csv::Header header(rows.front());
    const auto home_col = header.require("HomeTeam");
    const auto away_col = header.require("AwayTeam");

    std::vector<Fixture> out;
    out.reserve(rows.size() - 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i].fields;
        Fixture fx{home_col < f.size() ? csv::trim(f[home_col]) : std::string{},
                   away_col < f.size() ? csv::trim(f[away_col]) : std::string{}};
        if (fx.home_team.empty() || fx.away_team.empty()) throw MalformedRow(i, "missing team name");
        if (fx.home_team == fx.away_team) throw MalformedRow(i, "team '" + fx.home_team + "' listed on both sides");
        out.push_back(std::move(fx));
    }
    return out;
}

StandingsTable rank_table(const std::map<std::string, TeamTally>& accumulated) {
    StandingsTable table;
    table.rows.reserve(accumulated.size());
    for (const auto& [team, tally] : accumulated) table.rows.push_back({0, team, tally.points, tally.goal_diff});
    std::sort(table.rows.begin(), table.rows.end(), [](const StandingsRow& a, const StandingsRow& b) {
        if (a.expected_points != b.expected_points) return a.expected_points > b.expected_points;
        if (a.expected_goal_diff != b.expected_goal_diff) return a.expected_goal_diff > b.expected_goal_diff;
        return a.team < b.team;
    });
    for (std::size_t i = 0; i < table.rows.size(); ++i) table.rows[i].rank = static_cast<int>(i) + 1;
    return table;
}

namespace {

void check_fixtures(const std::vector<Fixture>& fixtures, const StrengthTable& strengths, UnknownTeamPolicy policy) {
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        const auto& fx = fixtures[i];
        const auto where = "fixture " + std::to_string(i + 1) + ": " + fx.home_team + " vs " + fx.away_team;
        if (fx.home_team == fx.away_team) throw Error(where + " pits a team against itself");
        if (policy == UnknownTeamPolicy::Error) {
            if (!strengths.contains(fx.home_team)) throw UnknownTeam(fx.home_team, where);
            if (!strengths.contains(fx.away_team)) throw UnknownTeam(fx.away_team, where);
        }
    }
}

}  // namespace

std::vector<MatchForecast> forecast_fixtures(const std::vector<Fixture>& fixtures, const StrengthTable& strengths,
                                             const LeagueAverages& league, const SimulationOptions& options) {
    check_fixtures(fixtures, strengths, options.policy);
    std::vector<MatchForecast> out;
    out.reserve(fixtures.size());
    for (const auto& fx : fixtures) {
        out.push_back(predict_match(fx.home_team, fx.away_team, strengths, league, options.policy, options.goal_cap));
    }
    return out;
}

StandingsTable simulate_standings(const std::vector<Fixture>& fixtures, const StrengthTable& strengths,
                                  const LeagueAverages& league, const SimulationOptions& options) {
    check_fixtures(fixtures, strengths, options.policy);
    if (fixtures.empty()) throw Error("no fixtures to simulate");

    // Floating sums depend on order, so accumulate over a canonical ordering.
    std::vector<Fixture> ordered = fixtures;
    std::sort(ordered.begin(), ordered.end());

    struct Contributions {
        std::vector<double> points;
        std::vector<double> goal_diff;
    };
    std::map<std::string, Contributions> parts;
    double coverage = 0.0;
    for (const auto& fx : ordered) {
        const auto f = predict_match(fx.home_team, fx.away_team, strengths, league, options.policy, options.goal_cap);
        auto& home = parts[fx.home_team];
        auto& away = parts[fx.away_team];
        home.points.push_back(f.expected_points_home);
        away.points.push_back(f.expected_points_away);
        home.goal_diff.push_back(f.rates.home - f.rates.away);
        away.goal_diff.push_back(f.rates.away - f.rates.home);
        coverage += f.grid_coverage;
    }

    // Sorted per-team sums: equal contributions give equal totals.
    auto sorted_sum = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return std::accumulate(v.begin(), v.end(), 0.0);
    };
    std::map<std::string, TeamTally> tally;
    for (const auto& [team, c] : parts) tally[team] = {sorted_sum(c.points), sorted_sum(c.goal_diff)};
    auto table = rank_table(tally);
    table.fixtures_count = fixtures.size();
    table.total_coverage = coverage / static_cast<double>(fixtures.size());
    return table;
}

std::string standings_to_text(const StandingsTable& table) {
    std::size_t width = 4;
    for (const auto& r : table.rows) width = std::max(width, r.team.size());
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%4s  %-*s  %12s  %12s\n", "Rank", static_cast<int>(width), "Team", "ExpPoints",
                  "ExpGD");
    out << buf;
    for (const auto& r : table.rows) {
        std::snprintf(buf, sizeof buf, "%4d  %-*s  %12.6f  %12.6f\n", r.rank, static_cast<int>(width), r.team.c_str(),
                      r.expected_points, r.expected_goal_diff);
        out << buf;
    }
    return out.str();
}

std::string standings_to_csv(const StandingsTable& table) {
    std::ostringstream out;
    out << "Rank,Team,ExpPoints,ExpGD\n";
    char buf[128];
    for (const auto& r : table.rows) {
        std::snprintf(buf, sizeof buf, ",%.6f,%.6f\n", r.expected_points, r.expected_goal_diff);
        out << r.rank << ',' << csv::escape(r.team) << buf;
    }
    return out.str();
}

nlohmann::json to_json(const StandingsTable& table) {
    auto rows = nlohmann::json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"rank", r.rank},
                        {"team", r.team},
                        {"expected_points", r.expected_points},
                        {"expected_goal_diff", r.expected_goal_diff}});
    }
    return {{"rows", rows}, {"fixtures_count", table.fixtures_count}, {"total_coverage", table.total_coverage}};
}

StandingsTable standings_from_json(const nlohmann::json& doc) {
    json_util::require_object(doc, "$");
    StandingsTable t;
    const auto& rows = json_util::member(doc, "rows", "$");
    if (!rows.is_array()) throw SpecError("$.rows", "expected an array");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string path = "$.rows[" + std::to_string(i) + "]";
        json_util::require_object(rows[i], path);
        t.rows.push_back({static_cast<int>(json_util::number(rows[i], "rank", path)),
                          json_util::string(rows[i], "team", path),
                          json_util::number(rows[i], "expected_points", path),
                          json_util::number(rows[i], "expected_goal_diff", path)});
    }
    t.fixtures_count = static_cast<std::size_t>(json_util::number(doc, "fixtures_count", "$"));
    t.total_coverage = json_util::number(doc, "total_coverage", "$");
    return t;
}

}  // namespace leaguecast
