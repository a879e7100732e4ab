#pragma once

// Counterfactual strength edits and baseline-vs-scenario comparisons.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "leaguecast/league.hpp"

namespace leaguecast {

/// Replace the target's vector wholesale.
struct Transplant {
    StrengthVector donor;
};

/// Multiply the target's components (home attack, home defense, away
/// attack, away defense) by positive factors.
struct Scale {
    std::array<double, 4> multipliers{1.0, 1.0, 1.0, 1.0};
};

struct ScenarioSpec {
    std::string target_team;
    std::variant<Transplant, Scale> action;
    std::string label;
};

/// Resolves {"donor": team, "table": path} transplants. `table_path` is
/// empty when the donor lives in the baseline table.
using DonorLookup = std::function<StrengthVector(const std::string& team, const std::optional<std::string>& table_path)>;

/// Accepts {"team": ..., "transplant": [4]}, {"team": ..., "scale": [4]} or
/// {"team": ..., "transplant": {"donor": ..., "table": ...}}, plus an
/// optional "label". Throws SpecError with a JSON path.
ScenarioSpec scenario_from_json(const nlohmann::json& doc, const DonorLookup& lookup = {});
nlohmann::json to_json(const ScenarioSpec& spec);

/// Returns a modified copy; throws UnknownTeam if the target is absent.
StrengthTable apply_scenario(const StrengthTable& strengths, const ScenarioSpec& spec);

/// Recomputes league means and ratios after an edit: ratios are mapped back
/// to goal means through `league`, re-averaged and re-normalized. Needs the
/// four league means, not just the multipliers.
std::pair<StrengthTable, LeagueAverages> renormalize(const StrengthTable& strengths, const LeagueAverages& league);

struct ScenarioOptions {
    SimulationOptions simulation;
    bool renormalize = false;
};

struct ScenarioReport {
    std::string target_team;
    std::string label;
    StandingsTable baseline;
    StandingsTable counterfactual;
    int target_rank_before = 0;
    int target_rank_after = 0;
    double target_points_before = 0.0;
    double target_points_after = 0.0;
    std::map<std::string, double> per_team_point_delta;
};

/// Simulates the same fixtures under the baseline and the edited table. The
/// league averages stay at baseline unless options.renormalize is set.
ScenarioReport compare_scenarios(const std::vector<Fixture>& fixtures, const StrengthTable& strengths,
                                 const LeagueAverages& league, const ScenarioSpec& spec,
                                 const ScenarioOptions& options = {});

std::string report_to_text(const ScenarioReport& report);
nlohmann::json to_json(const ScenarioReport& report);

}  // namespace leaguecast
