#include "leaguecast/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "leaguecast/errors.hpp"
#include "json_util.hpp"

namespace leaguecast {

namespace {

std::array<double, 4> four_numbers(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 4) throw SpecError(path, "expected an array of 4 numbers");
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!j[i].is_number()) throw SpecError(path + "[" + std::to_string(i) + "]", "expected a number");
        out[i] = j[i].get<double>();
        if (!std::isfinite(out[i])) throw SpecError(path + "[" + std::to_string(i) + "]", "must be finite");
    }
    return out;
}

StrengthVector to_vector(const std::array<double, 4>& v) { return {v[0], v[1], v[2], v[3]}; }

}  // namespace

ScenarioSpec scenario_from_json(const nlohmann::json& doc, const DonorLookup& lookup) {
    json_util::require_object(doc, "$");
    ScenarioSpec spec;
    spec.target_team = json_util::string(doc, "team", "$");
    if (spec.target_team.empty()) throw SpecError("$.team", "must not be empty");
    if (doc.contains("label")) spec.label = json_util::string(doc, "label", "$");

    const bool has_transplant = doc.contains("transplant");
    const bool has_scale = doc.contains("scale");
    if (has_transplant == has_scale) throw SpecError("$", "exactly one of 'transplant' or 'scale' is required");

    if (has_scale) {
        const auto m = four_numbers(doc.at("scale"), "$.scale");
        for (std::size_t i = 0; i < 4; ++i) {
            if (!(m[i] > 0.0)) throw SpecError("$.scale[" + std::to_string(i) + "]", "multipliers must be positive");
        }
        spec.action = Scale{m};
        return spec;
    }

    const auto& t = doc.at("transplant");
    if (t.is_array()) {
        const auto v = four_numbers(t, "$.transplant");
        for (std::size_t i = 0; i < 4; ++i) {
            if (v[i] < 0.0) throw SpecError("$.transplant[" + std::to_string(i) + "]", "must be non-negative");
        }
        spec.action = Transplant{to_vector(v)};
        return spec;
    }
    if (!t.is_object()) throw SpecError("$.transplant", "expected an array of 4 numbers or a donor object");
    const auto donor = json_util::string(t, "donor", "$.transplant");
    std::optional<std::string> table;
    if (t.contains("table")) table = json_util::string(t, "table", "$.transplant");
    if (!lookup) throw SpecError("$.transplant.donor", "donor lookup is not available here");
    try {
        spec.action = Transplant{lookup(donor, table)};
    } catch (const UnknownTeam& e) {
        throw SpecError("$.transplant.donor", e.what());
    }
    return spec;
}

nlohmann::json to_json(const ScenarioSpec& spec) {
    nlohmann::json doc = {{"team", spec.target_team}};
    if (!spec.label.empty()) doc["label"] = spec.label;
    if (const auto* t = std::get_if<Transplant>(&spec.action)) {
        doc["transplant"] = {t->donor.home_attack, t->donor.home_defense, t->donor.away_attack, t->donor.away_defense};
    } else {
        const auto& m = std::get<Scale>(spec.action).multipliers;
        doc["scale"] = {m[0], m[1], m[2], m[3]};
    }
    return doc;
}

StrengthTable apply_scenario(const StrengthTable& strengths, const ScenarioSpec& spec) {
    const auto current = strengths.find(spec.target_team);
    if (!current) throw UnknownTeam(spec.target_team, "scenario target");
    StrengthTable out = strengths;
    if (const auto* t = std::get_if<Transplant>(&spec.action)) {
        out.set(spec.target_team, t->donor);
    } else {
        const auto& m = std::get<Scale>(spec.action).multipliers;
        for (double f : m) {
            if (!(f > 0.0) || !std::isfinite(f)) throw DomainError("scale multipliers must be positive and finite");
        }
        out.set(spec.target_team, {current->home_attack * m[0], current->home_defense * m[1],
                                   current->away_attack * m[2], current->away_defense * m[3]});
    }
    return out;
}

std::pair<StrengthTable, LeagueAverages> renormalize(const StrengthTable& strengths, const LeagueAverages& league) {
    if (!(league.home_scored > 0 && league.home_conceded > 0 && league.away_scored > 0 && league.away_conceded > 0)) {
        throw Error("renormalizing needs the four league goal means, not just the multipliers");
    }
    std::vector<TeamGoalAverages> means;
    means.reserve(strengths.size());
    for (const auto& [team, s] : strengths.entries()) {
        TeamGoalAverages m;
        m.team = team;
        m.home_scored = s.home_attack * league.home_scored;
        m.home_conceded = s.home_defense * league.home_conceded;
        m.away_scored = s.away_attack * league.away_scored;
        m.away_conceded = s.away_defense * league.away_conceded;
        means.push_back(std::move(m));
    }
    const auto updated = league_averages(means);
    return {StrengthTable(normalize_strengths(means, updated)), updated};
}

ScenarioReport compare_scenarios(const std::vector<Fixture>& fixtures, const StrengthTable& strengths,
                                 const LeagueAverages& league, const ScenarioSpec& spec,
                                 const ScenarioOptions& options) {
    auto modified = apply_scenario(strengths, spec);
    LeagueAverages modified_league = league;
    if (options.renormalize) std::tie(modified, modified_league) = renormalize(modified, league);

    ScenarioReport r;
    r.target_team = spec.target_team;
    r.label = spec.label;
    r.baseline = simulate_standings(fixtures, strengths, league, options.simulation);
    r.counterfactual = simulate_standings(fixtures, modified, modified_league, options.simulation);

    for (const auto& row : r.baseline.rows) {
        const auto* after = r.counterfactual.find(row.team);
        r.per_team_point_delta[row.team] = after->expected_points - row.expected_points;
    }
    if (const auto* before = r.baseline.find(spec.target_team)) {
        const auto* after = r.counterfactual.find(spec.target_team);
        r.target_rank_before = before->rank;
        r.target_rank_after = after->rank;
        r.target_points_before = before->expected_points;
        r.target_points_after = after->expected_points;
    }
    return r;
}

std::string report_to_text(const ScenarioReport& r) {
    std::size_t width = 4;
    for (const auto& row : r.baseline.rows) width = std::max(width, row.team.size());
    const int w = static_cast<int>(width);

    std::ostringstream out;
    char buf[512];
    if (!r.label.empty()) out << "Scenario: " << r.label << "\n";
    std::snprintf(buf, sizeof buf, "  %4s  %-*s  %12s    %4s  %-*s  %12s  %10s\n", "Rank", w, "Baseline", "ExpPoints",
                  "Rank", w, "Scenario", "ExpPoints", "Delta");
    out << buf;
    for (std::size_t i = 0; i < r.baseline.rows.size(); ++i) {
        const auto& b = r.baseline.rows[i];
        const auto& c = r.counterfactual.rows[i];
        const bool mark = b.team == r.target_team || c.team == r.target_team;
        std::snprintf(buf, sizeof buf, "%c %4d  %-*s  %12.6f    %4d  %-*s  %12.6f  %+10.6f\n", mark ? '*' : ' ', b.rank,
                      w, b.team.c_str(), b.expected_points, c.rank, w, c.team.c_str(), c.expected_points,
                      r.per_team_point_delta.at(c.team));
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "\n%s: rank %d -> %d (%+d), points %.6f -> %.6f (%+.6f)\n", r.target_team.c_str(),
                  r.target_rank_before, r.target_rank_after, r.target_rank_after - r.target_rank_before,
                  r.target_points_before, r.target_points_after, r.target_points_after - r.target_points_before);
    out << buf;
    return out.str();
}

nlohmann::json to_json(const ScenarioReport& r) {
    nlohmann::json deltas = nlohmann::json::object();
    for (const auto& [team, d] : r.per_team_point_delta) deltas[team] = d;
    return {{"target_team", r.target_team},
            {"label", r.label},
            {"baseline", to_json(r.baseline)},
            {"counterfactual", to_json(r.counterfactual)},
            {"target_rank_before", r.target_rank_before},
            {"target_rank_after", r.target_rank_after},
            {"target_points_before", r.target_points_before},
            {"target_points_after", r.target_points_after},
            {"per_team_point_delta", deltas}};
}

}  // namespace leaguecast
