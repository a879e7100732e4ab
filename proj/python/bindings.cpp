#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leaguecast/cli.hpp"
#include "leaguecast/errors.hpp"
#include "leaguecast/ingest.hpp"
#include "leaguecast/league.hpp"
#include "leaguecast/scenario.hpp"
#include "leaguecast/scoremodel.hpp"
#include "leaguecast/strength.hpp"

namespace py = pybind11;
using namespace leaguecast;

namespace {

UnknownTeamPolicy policy_of(bool neutral_fallback) {
    return neutral_fallback ? UnknownTeamPolicy::Neutral : UnknownTeamPolicy::Error;
}

std::string vector_repr(const StrengthVector& s) {
    std::ostringstream out;
    out << "StrengthVector(" << s.home_attack << ", " << s.home_defense << ", " << s.away_attack << ", "
        << s.away_defense << ")";
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "leaguecast core bindings";

    py::register_exception<Error>(m, "LeaguecastError", PyExc_ValueError);

    py::class_<MatchRecord>(m, "MatchRecord")
        .def_readonly("home_team", &MatchRecord::home_team)
        .def_readonly("away_team", &MatchRecord::away_team)
        .def_readonly("home_goals", &MatchRecord::home_goals)
        .def_readonly("away_goals", &MatchRecord::away_goals)
        .def_readonly("season", &MatchRecord::season)
        .def_property_readonly("date", [](const MatchRecord& r) -> py::object {
            if (!r.date) return py::none();
            return py::make_tuple(static_cast<int>(r.date->year()), static_cast<unsigned>(r.date->month()),
                                  static_cast<unsigned>(r.date->day()));
        });

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("records", &Dataset::records)
        .def_property_readonly("teams", &Dataset::teams)
        .def_property_readonly("seasons", &Dataset::seasons)
        .def("__len__", &Dataset::size)
        .def("to_csv", [](const Dataset& d) { return to_csv(d); });

    m.def(
        "parse_csv",
        [](const std::string& content, std::optional<std::string> season, std::map<std::string, std::string> aliases,
           bool allow_duplicates) {
            return parse_csv(content, ParseOptions{std::move(season), std::move(aliases), allow_duplicates});
        },
        py::arg("content"), py::arg("season") = py::none(), py::arg("aliases") = std::map<std::string, std::string>{},
        py::arg("allow_duplicates") = false);
    m.def(
        "pool_seasons",
        [](const std::vector<Dataset>& datasets, const std::string& window) {
            return pool_seasons(datasets, SeasonWindow::parse(window));
        },
        py::arg("datasets"), py::arg("window"));

    py::class_<TeamGoalAverages>(m, "TeamGoalAverages")
        .def_readonly("team", &TeamGoalAverages::team)
        .def_readonly("home_scored", &TeamGoalAverages::home_scored)
        .def_readonly("home_conceded", &TeamGoalAverages::home_conceded)
        .def_readonly("away_scored", &TeamGoalAverages::away_scored)
        .def_readonly("away_conceded", &TeamGoalAverages::away_conceded)
        .def_readonly("home_matches", &TeamGoalAverages::home_matches)
        .def_readonly("away_matches", &TeamGoalAverages::away_matches);

    py::class_<LeagueAverages>(m, "LeagueAverages")
        .def_static("from_means", &LeagueAverages::from_means)
        .def_static("from_multipliers", &LeagueAverages::from_multipliers)
        .def_readonly("home_scored", &LeagueAverages::home_scored)
        .def_readonly("home_conceded", &LeagueAverages::home_conceded)
        .def_readonly("away_scored", &LeagueAverages::away_scored)
        .def_readonly("away_conceded", &LeagueAverages::away_conceded)
        .def_readonly("overall_home", &LeagueAverages::overall_home)
        .def_readonly("overall_away", &LeagueAverages::overall_away);

    py::class_<StrengthVector>(m, "StrengthVector")
        .def(py::init<>())
        .def(py::init([](double ha, double hd, double aa, double ad) { return StrengthVector{ha, hd, aa, ad}; }),
             py::arg("home_attack"), py::arg("home_defense"), py::arg("away_attack"), py::arg("away_defense"))
        .def_readwrite("home_attack", &StrengthVector::home_attack)
        .def_readwrite("home_defense", &StrengthVector::home_defense)
        .def_readwrite("away_attack", &StrengthVector::away_attack)
        .def_readwrite("away_defense", &StrengthVector::away_defense)
        .def("__eq__", [](const StrengthVector& a, const StrengthVector& b) { return a == b; })
        .def("__repr__", &vector_repr);

    py::class_<StrengthTable>(m, "StrengthTable")
        .def(py::init<>())
        .def(py::init([](const std::map<std::string, StrengthVector>& rows) {
            StrengthTable t;
            for (const auto& [team, s] : rows) t.set(team, s);
            return t;
        }))
        .def("__len__", &StrengthTable::size)
        .def("__contains__", &StrengthTable::contains)
        .def("__getitem__",
             [](const StrengthTable& t, const std::string& team) { return t.resolve(team, UnknownTeamPolicy::Error); })
        .def("__setitem__", &StrengthTable::set)
        .def("teams",
             [](const StrengthTable& t) {
                 std::vector<std::string> out;
                 for (const auto& [team, s] : t.entries()) out.push_back(team);
                 return out;
             })
        .def("to_csv", [](const StrengthTable& t) { return strengths_to_csv(t); })
        .def_static("from_csv", [](const std::string& content) { return strengths_from_csv(content); });

    py::class_<StrengthModel>(m, "StrengthModel")
        .def_readonly("averages", &StrengthModel::averages)
        .def_readonly("league", &StrengthModel::league)
        .def_readonly("table", &StrengthModel::table);

    m.def("team_goal_averages", &team_goal_averages, py::arg("data"));
    m.def("league_averages", &league_averages, py::arg("per_team"));
    m.def(
        "normalize_strengths",
        [](const std::vector<TeamGoalAverages>& per_team, const LeagueAverages& league) {
            return StrengthTable(normalize_strengths(per_team, league));
        },
        py::arg("per_team"), py::arg("league"));
    m.def("estimate_strengths", &estimate_strengths, py::arg("data"));

    py::class_<MatchRates>(m, "MatchRates")
        .def(py::init([](double home, double away) { return MatchRates{home, away}; }), py::arg("home"),
             py::arg("away"))
        .def_readonly("home", &MatchRates::home)
        .def_readonly("away", &MatchRates::away);

    py::class_<MatchForecast>(m, "MatchForecast")
        .def_readonly("rates", &MatchForecast::rates)
        .def_readonly("prob_home_win", &MatchForecast::prob_home_win)
        .def_readonly("prob_away_win", &MatchForecast::prob_away_win)
        .def_readonly("prob_draw", &MatchForecast::prob_draw)
        .def_readonly("expected_points_home", &MatchForecast::expected_points_home)
        .def_readonly("expected_points_away", &MatchForecast::expected_points_away)
        .def_readonly("grid_coverage", &MatchForecast::grid_coverage)
        .def_readonly("goal_cap", &MatchForecast::goal_cap);

    m.def("poisson_pmf", &poisson_pmf, py::arg("x"), py::arg("rate"));
    m.def("match_rates", &match_rates, py::arg("home"), py::arg("away"), py::arg("league"));
    m.def("forecast", &forecast, py::arg("rates"), py::arg("goal_cap") = kDefaultGoalCap);
    m.def(
        "predict_match",
        [](const std::string& home, const std::string& away, const StrengthTable& table, const LeagueAverages& league,
           int goal_cap, bool neutral_fallback) {
            return predict_match(home, away, table, league, policy_of(neutral_fallback), goal_cap);
        },
        py::arg("home"), py::arg("away"), py::arg("strengths"), py::arg("league"),
        py::arg("goal_cap") = kDefaultGoalCap, py::arg("neutral_fallback") = false);

    py::class_<Fixture>(m, "Fixture")
        .def(py::init([](std::string home, std::string away) { return Fixture{std::move(home), std::move(away)}; }),
             py::arg("home_team"), py::arg("away_team"))
        .def_readonly("home_team", &Fixture::home_team)
        .def_readonly("away_team", &Fixture::away_team);

    py::class_<StandingsRow>(m, "StandingsRow")
        .def_readonly("rank", &StandingsRow::rank)
        .def_readonly("team", &StandingsRow::team)
        .def_readonly("expected_points", &StandingsRow::expected_points)
        .def_readonly("expected_goal_diff", &StandingsRow::expected_goal_diff);

    py::class_<StandingsTable>(m, "StandingsTable")
        .def_readonly("rows", &StandingsTable::rows)
        .def_readonly("fixtures_count", &StandingsTable::fixtures_count)
        .def_readonly("total_coverage", &StandingsTable::total_coverage)
        .def("to_text", [](const StandingsTable& t) { return standings_to_text(t); })
        .def("to_csv", [](const StandingsTable& t) { return standings_to_csv(t); });

    m.def(
        "round_robin_fixtures",
        [](const std::vector<std::string>& teams) {
            return round_robin_fixtures(std::set<std::string>(teams.begin(), teams.end()));
        },
        py::arg("teams"));
    m.def("load_fixtures", &load_fixtures, py::arg("content"));
    m.def(
        "simulate_standings",
        [](const std::vector<Fixture>& fixtures, const StrengthTable& table, const LeagueAverages& league, int goal_cap,
           bool neutral_fallback) {
            return simulate_standings(fixtures, table, league, {goal_cap, policy_of(neutral_fallback)});
        },
        py::arg("fixtures"), py::arg("strengths"), py::arg("league"), py::arg("goal_cap") = kDefaultGoalCap,
        py::arg("neutral_fallback") = false);

    py::class_<ScenarioSpec>(m, "ScenarioSpec")
        .def_readonly("target_team", &ScenarioSpec::target_team)
        .def_readonly("label", &ScenarioSpec::label);
    m.def(
        "transplant_scenario",
        [](std::string team, const StrengthVector& donor, std::string label) {
            return ScenarioSpec{std::move(team), Transplant{donor}, std::move(label)};
        },
        py::arg("team"), py::arg("donor"), py::arg("label") = "");
    m.def(
        "scale_scenario",
        [](std::string team, std::array<double, 4> multipliers, std::string label) {
            return ScenarioSpec{std::move(team), Scale{multipliers}, std::move(label)};
        },
        py::arg("team"), py::arg("multipliers"), py::arg("label") = "");
    m.def("apply_scenario", &apply_scenario, py::arg("strengths"), py::arg("spec"));

    py::class_<ScenarioReport>(m, "ScenarioReport")
        .def_readonly("target_team", &ScenarioReport::target_team)
        .def_readonly("baseline", &ScenarioReport::baseline)
        .def_readonly("counterfactual", &ScenarioReport::counterfactual)
        .def_readonly("target_rank_before", &ScenarioReport::target_rank_before)
        .def_readonly("target_rank_after", &ScenarioReport::target_rank_after)
        .def_readonly("target_points_before", &ScenarioReport::target_points_before)
        .def_readonly("target_points_after", &ScenarioReport::target_points_after)
        .def_readonly("per_team_point_delta", &ScenarioReport::per_team_point_delta)
        .def("to_text", [](const ScenarioReport& r) { return report_to_text(r); });
    m.def(
        "compare_scenarios",
        [](const std::vector<Fixture>& fixtures, const StrengthTable& table, const LeagueAverages& league,
           const ScenarioSpec& spec, int goal_cap, bool neutral_fallback, bool renormalize) {
            return compare_scenarios(fixtures, table, league, spec,
                                     {{goal_cap, policy_of(neutral_fallback)}, renormalize});
        },
        py::arg("fixtures"), py::arg("strengths"), py::arg("league"), py::arg("spec"),
        py::arg("goal_cap") = kDefaultGoalCap, py::arg("neutral_fallback") = false, py::arg("renormalize") = false);

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "leaguecast");
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
