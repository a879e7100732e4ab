#pragma once

// Venue-split goal averages and the normalized attack/defense ratios built
// from them.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "leaguecast/ingest.hpp"

namespace leaguecast {

struct TeamGoalAverages {
    std::string team;
    double home_scored = 0.0;
    double home_conceded = 0.0;
    double away_scored = 0.0;
    double away_conceded = 0.0;
    std::size_t home_matches = 0;
    std::size_t away_matches = 0;
};

struct LeagueAverages {
    double home_scored = 0.0;
    double home_conceded = 0.0;
    double away_scored = 0.0;
    double away_conceded = 0.0;
    /// Expected home goals multiplier, (home_scored + away_conceded) / 2.
    double overall_home = 0.0;
    /// Expected away goals multiplier, (home_conceded + away_scored) / 2.
    double overall_away = 0.0;

    /// Fills the two multipliers from the four means. Throws ZeroLeagueAverage.
    static LeagueAverages from_means(double home_scored, double home_conceded, double away_scored,
                                     double away_conceded);
    /// Only the multipliers are known, e.g. for an imported strength table.
    static LeagueAverages from_multipliers(double overall_home, double overall_away);

    friend bool operator==(const LeagueAverages&, const LeagueAverages&) = default;
};

/// Ratios against the league mean; 1.0 is league-typical.
struct StrengthVector {
    double home_attack = 1.0;
    double home_defense = 1.0;
    double away_attack = 1.0;
    double away_defense = 1.0;

    static constexpr StrengthVector neutral() { return {}; }

    friend bool operator==(const StrengthVector&, const StrengthVector&) = default;
};

struct TeamStrength {
    std::string team;
    StrengthVector strength;

    friend bool operator==(const TeamStrength&, const TeamStrength&) = default;
};

enum class UnknownTeamPolicy {
    Error,
    Neutral,  // substitute StrengthVector::neutral()
};

/// Team name to strength vector, ordered by name.
class StrengthTable {
public:
    StrengthTable() = default;
    explicit StrengthTable(const std::vector<TeamStrength>& rows);

    /// Validates finiteness and non-negativity.
    void set(const std::string& team, const StrengthVector& strength);
    bool contains(std::string_view team) const;
    std::optional<StrengthVector> find(std::string_view team) const;
    /// Throws UnknownTeam under UnknownTeamPolicy::Error.
    StrengthVector resolve(std::string_view team, UnknownTeamPolicy policy) const;

    std::vector<TeamStrength> rows() const;
    std::size_t size() const noexcept { return table_.size(); }
    bool empty() const noexcept { return table_.empty(); }
    const std::map<std::string, StrengthVector, std::less<>>& entries() const noexcept { return table_; }

    friend bool operator==(const StrengthTable&, const StrengthTable&) = default;

private:
    std::map<std::string, StrengthVector, std::less<>> table_;
};

/// Per-team venue means over the whole dataset, sorted by team name.
/// Throws OneSidedTeam listing every team missing home or away matches.
std::vector<TeamGoalAverages> team_goal_averages(const Dataset& data);

/// Unweighted mean over teams of the per-team means.
LeagueAverages league_averages(const std::vector<TeamGoalAverages>& per_team);

std::vector<TeamStrength> normalize_strengths(const std::vector<TeamGoalAverages>& per_team,
                                              const LeagueAverages& league);

/// The usual pipeline bundled: averages, league means and ratios.
struct StrengthModel {
    std::vector<TeamGoalAverages> averages;
    LeagueAverages league;
    StrengthTable table;
};

StrengthModel estimate_strengths(const Dataset& data);

// --- serialization -----------------------------------------------------

/// Team,HomeAttack,HomeDefense,AwayAttack,AwayDefense with 6 decimals.
std::string strengths_to_csv(const StrengthTable& table);
StrengthTable strengths_from_csv(std::string_view content);

/// {"league": {...}, "teams": [{"team":..., "home_attack":...}, ...]}.
/// The league block is omitted when `league` is empty.
nlohmann::json strengths_to_json(const StrengthTable& table,
                                 const std::optional<LeagueAverages>& league = std::nullopt);

struct LoadedStrengths {
    StrengthTable table;
    std::optional<LeagueAverages> league;
};
LoadedStrengths strengths_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const LeagueAverages& league);
LeagueAverages league_from_json(const nlohmann::json& doc, const std::string& path = "$");

}  // namespace leaguecast
