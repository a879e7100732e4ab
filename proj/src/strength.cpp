#include "leaguecast/strength.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "leaguecast/csv.hpp"
#include "leaguecast/errors.hpp"
#include "json_util.hpp"

namespace leaguecast {

LeagueAverages LeagueAverages::from_means(double home_scored, double home_conceded, double away_scored,
                                          double away_conceded) {
    if (home_scored == 0.0) throw ZeroLeagueAverage("home_scored");
    if (home_conceded == 0.0) throw ZeroLeagueAverage("home_conceded");
    if (away_scored == 0.0) throw ZeroLeagueAverage("away_scored");
    if (away_conceded == 0.0) throw ZeroLeagueAverage("away_conceded");
    LeagueAverages l;
    l.home_scored = home_scored;
    l.home_conceded = home_conceded;
    l.away_scored = away_scored;
    l.away_conceded = away_conceded;
    l.overall_home = (home_scored + away_conceded) / 2.0;
    l.overall_away = (home_conceded + away_scored) / 2.0;
    return l;
}

LeagueAverages LeagueAverages::from_multipliers(double overall_home, double overall_away) {
    if (!(std::isfinite(overall_home) && overall_home >= 0.0 && std::isfinite(overall_away) &&
          overall_away >= 0.0)) {
        throw DomainError("scoring multipliers must be finite and non-negative");
    }
    LeagueAverages l;
    l.overall_home = overall_home;
    l.overall_away = overall_away;
    return l;
}

StrengthTable::StrengthTable(const std::vector<TeamStrength>& rows) {
    for (const auto& r : rows) set(r.team, r.strength);
}

void StrengthTable::set(const std::string& team, const StrengthVector& s) {
    for (double v : {s.home_attack, s.home_defense, s.away_attack, s.away_defense}) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DomainError("strength components for '" + team + "' must be finite and non-negative");
        }
    }
    if (team.empty()) throw DomainError("empty team name in strength table");
    table_.insert_or_assign(team, s);
}

bool StrengthTable::contains(std::string_view team) const { return table_.find(team) != table_.end(); }

std::optional<StrengthVector> StrengthTable::find(std::string_view team) const {
    if (auto it = table_.find(team); it != table_.end()) return it->second;
    return std::nullopt;
}

StrengthVector StrengthTable::resolve(std::string_view team, UnknownTeamPolicy policy) const {
    if (auto s = find(team)) return *s;
    if (policy == UnknownTeamPolicy::Neutral) return StrengthVector::neutral();
    throw UnknownTeam(std::string(team));
}

std::vector<TeamStrength> StrengthTable::rows() const {
    std::vector<TeamStrength> out;
    out.reserve(table_.size());
    for (const auto& [team, s] : table_) out.push_back({team, s});
    return out;
}

std::vector<TeamGoalAverages> team_goal_averages(const Dataset& data) {
    if (data.empty()) throw Error("cannot compute averages of an empty dataset");

    // Integer totals keep the means exact and independent of record order.
    struct Totals {
        long long home_for = 0, home_against = 0, away_for = 0, away_against = 0;
        std::size_t home_n = 0, away_n = 0;
    };
    std::map<std::string, Totals> totals;
    for (const auto& r : data.records()) {
        auto& h = totals[r.home_team];
        h.home_for += r.home_goals;
        h.home_against += r.away_goals;
        ++h.home_n;
        auto& a = totals[r.away_team];
        a.away_for += r.away_goals;
        a.away_against += r.home_goals;
        ++a.away_n;
    }

    std::vector<std::string> one_sided;
    std::vector<TeamGoalAverages> out;
    out.reserve(totals.size());
    for (const auto& [team, t] : totals) {
        if (t.home_n == 0 || t.away_n == 0) {
            one_sided.push_back(team);
            continue;
        }
        const double hn = static_cast<double>(t.home_n);
        const double an = static_cast<double>(t.away_n);
        out.push_back({team, static_cast<double>(t.home_for) / hn, static_cast<double>(t.home_against) / hn,
                       static_cast<double>(t.away_for) / an, static_cast<double>(t.away_against) / an,
                       t.home_n, t.away_n});
    }
    if (!one_sided.empty()) throw OneSidedTeam(std::move(one_sided));
    return out;
}

LeagueAverages league_averages(const std::vector<TeamGoalAverages>& per_team) {
    if (per_team.empty()) throw Error("cannot compute league averages without teams");
    double hs = 0, hc = 0, as = 0, ac = 0;
    for (const auto& t : per_team) {
        hs += t.home_scored;
        hc += t.home_conceded;
        as += t.away_scored;
        ac += t.away_conceded;
    }
    const double n = static_cast<double>(per_team.size());
    return LeagueAverages::from_means(hs / n, hc / n, as / n, ac / n);
}

std::vector<TeamStrength> normalize_strengths(const std::vector<TeamGoalAverages>& per_team,
                                              const LeagueAverages& league) {
    if (!(league.home_scored > 0 && league.home_conceded > 0 && league.away_scored > 0 &&
          league.away_conceded > 0)) {
        throw ZeroLeagueAverage("league means must be strictly positive to normalize");
    }
    std::vector<TeamStrength> out;
    out.reserve(per_team.size());
    for (const auto& t : per_team) {
        out.push_back({t.team,
                       {t.home_scored / league.home_scored, t.home_conceded / league.home_conceded,
                        t.away_scored / league.away_scored, t.away_conceded / league.away_conceded}});
    }
    return out;
}

StrengthModel estimate_strengths(const Dataset& data) {
    StrengthModel m;
    m.averages = team_goal_averages(data);
    m.league = league_averages(m.averages);
    m.table = StrengthTable(normalize_strengths(m.averages, m.league));
    return m;
}

std::string strengths_to_csv(const StrengthTable& table) {
    std::ostringstream out;
    out << "Team,HomeAttack,HomeDefense,AwayAttack,AwayDefense\n";
    char buf[128];
    for (const auto& [team, s] : table.entries()) {
        std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%.6f,%.6f\n", s.home_attack, s.home_defense,
                      s.away_attack, s.away_defense);
        out << csv::escape(team) << buf;
    }
    return out.str();
}

StrengthTable strengths_from_csv(std::string_view content) {
    const auto rows = csv::read(content);
    if (rows.empty()) throw EmptyFile();
    const csv::Header header(rows.front());
    const std::size_t cols[] = {header.require("Team"), header.require("HomeAttack"),
                                header.require("HomeDefense"), header.require("AwayAttack"),
                                header.require("AwayDefense")};
    if (rows.size() == 1) throw EmptyFile();

    StrengthTable table;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i].fields;
        auto text = [&](std::size_t c) { return c < f.size() ? csv::trim(f[c]) : std::string{}; };
        const auto team = text(cols[0]);
        if (team.empty()) throw MalformedRow(i, "missing team name");
        if (table.contains(team)) throw MalformedRow(i, "team '" + team + "' listed twice");
        double v[4];
        for (int k = 0; k < 4; ++k) {
            const auto t = text(cols[k + 1]);
            std::size_t used = 0;
            try {
                v[k] = std::stod(t, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (t.empty() || used != t.size()) throw MalformedRow(i, "'" + t + "' is not a number");
        }
        try {
            table.set(team, {v[0], v[1], v[2], v[3]});
        } catch (const DomainError& e) {
            throw MalformedRow(i, e.what());
        }
    }
    return table;
}

nlohmann::json to_json(const LeagueAverages& l) {
    return {{"home_scored", l.home_scored},     {"home_conceded", l.home_conceded},
            {"away_scored", l.away_scored},     {"away_conceded", l.away_conceded},
            {"overall_home", l.overall_home},   {"overall_away", l.overall_away}};
}

LeagueAverages league_from_json(const nlohmann::json& doc, const std::string& path) {
    json_util::require_object(doc, path);
    const double n = json_util::number(doc, "overall_home", path);
    const double p = json_util::number(doc, "overall_away", path);
    if (doc.contains("home_scored")) {
        auto l = LeagueAverages::from_means(json_util::number(doc, "home_scored", path),
                                            json_util::number(doc, "home_conceded", path),
                                            json_util::number(doc, "away_scored", path),
                                            json_util::number(doc, "away_conceded", path));
        // The stored multipliers win; they are what predictions used.
        l.overall_home = n;
        l.overall_away = p;
        return l;
    }
    return LeagueAverages::from_multipliers(n, p);
}

nlohmann::json strengths_to_json(const StrengthTable& table, const std::optional<LeagueAverages>& league) {
    nlohmann::json doc = nlohmann::json::object();
    if (league) doc["league"] = to_json(*league);
    auto& teams = doc["teams"] = nlohmann::json::array();
    for (const auto& [team, s] : table.entries()) {
        teams.push_back({{"team", team},
                         {"home_attack", s.home_attack},
                         {"home_defense", s.home_defense},
                         {"away_attack", s.away_attack},
                         {"away_defense", s.away_defense}});
    }
    return doc;
}

LoadedStrengths strengths_from_json(const nlohmann::json& doc) {
    json_util::require_object(doc, "$");
    LoadedStrengths out;
    if (doc.contains("league")) out.league = league_from_json(doc.at("league"), "$.league");
    if (!doc.contains("teams") || !doc.at("teams").is_array()) {
        throw SpecError("$.teams", "expected an array of team strength objects");
    }
    const auto& teams = doc.at("teams");
    for (std::size_t i = 0; i < teams.size(); ++i) {
        const std::string path = "$.teams[" + std::to_string(i) + "]";
        const auto& t = teams[i];
        json_util::require_object(t, path);
        const auto team = json_util::string(t, "team", path);
        if (out.table.contains(team)) throw SpecError(path + ".team", "team '" + team + "' listed twice");
        StrengthVector s{json_util::number(t, "home_attack", path), json_util::number(t, "home_defense", path),
                         json_util::number(t, "away_attack", path), json_util::number(t, "away_defense", path)};
        try {
            out.table.set(team, s);
        } catch (const DomainError& e) {
            throw SpecError(path, e.what());
        }
    }
    return out;
}

}  // namespace leaguecast
