#include "leaguecast/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "leaguecast/csv.hpp"
#include "leaguecast/errors.hpp"
#include "leaguecast/ingest.hpp"
#include "leaguecast/league.hpp"
#include "leaguecast/scenario.hpp"
#include "leaguecast/scoremodel.hpp"
#include "leaguecast/strength.hpp"

namespace leaguecast::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::vector<std::string> matches;
    std::optional<std::string> season;
    std::optional<std::string> window;
    std::vector<std::string> aliases;
    bool allow_duplicates = false;

    std::optional<std::string> strengths_path;
    std::optional<double> home_rate;
    std::optional<double> away_rate;

    std::optional<std::string> fixtures_path;
    bool round_robin = false;
    std::vector<std::string> teams;

    int goal_cap = kDefaultGoalCap;
    bool neutral_fallback = false;
    bool renormalize = false;
    std::string format = "text";
    std::optional<std::string> output;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Prefixes library errors with the file they came from.
template <typename F>
auto with_file(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    } catch (const json::exception& e) {
        throw Error(path + ": invalid JSON: " + e.what());
    }
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct Model {
    StrengthTable table;
    LeagueAverages league;
    std::optional<StrengthModel> estimated;
};

Dataset load_matches(const RunConfig& cfg) {
    ParseOptions base;
    base.allow_duplicates = cfg.allow_duplicates;
    for (const auto& a : cfg.aliases) {
        const auto eq = a.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == a.size()) {
            throw UsageError("--alias expects FROM=TO, got '" + a + "'");
        }
        base.aliases[a.substr(0, eq)] = a.substr(eq + 1);
    }
    if (cfg.matches.size() > 1 && !cfg.window) {
        throw UsageError("--window is required when pooling several match files");
    }

    std::vector<Dataset> datasets;
    for (const auto& path : cfg.matches) {
        ParseOptions opts = base;
        opts.season = cfg.season ? cfg.season : season_from_path(path);
        if (!opts.season && cfg.window) {
            throw UsageError("cannot infer the season of '" + path + "'; pass --season or name the file by season");
        }
        const auto content = read_file(path);
        datasets.push_back(with_file(path, [&] { return parse_csv(content, opts); }));
    }
    if (!cfg.window) return datasets.front();
    const auto window = SeasonWindow::parse(*cfg.window);
    return pool_seasons(datasets, window);
}

Model load_model(const RunConfig& cfg) {
    Model m;
    if (!cfg.matches.empty()) {
        m.estimated = estimate_strengths(load_matches(cfg));
        m.table = m.estimated->table;
        m.league = m.estimated->league;
    } else {
        const auto& path = *cfg.strengths_path;
        const auto content = read_file(path);
        const auto first = content.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
        std::optional<LeagueAverages> league;
        if (fs::path(path).extension() == ".json" || (first != std::string::npos && content[first] == '{')) {
            auto loaded = with_file(path, [&] { return strengths_from_json(json::parse(content)); });
            m.table = std::move(loaded.table);
            league = loaded.league;
        } else {
            m.table = with_file(path, [&] { return strengths_from_csv(content); });
        }
        if (cfg.home_rate || cfg.away_rate) {
            if (!(cfg.home_rate && cfg.away_rate)) throw UsageError("--home-rate and --away-rate go together");
            league = LeagueAverages::from_multipliers(*cfg.home_rate, *cfg.away_rate);
        }
        if (!league) {
            throw UsageError("'" + path + "' carries no league block; pass --home-rate and --away-rate");
        }
        m.league = *league;
    }
    return m;
}

SimulationOptions sim_options(const RunConfig& cfg) {
    return {cfg.goal_cap, cfg.neutral_fallback ? UnknownTeamPolicy::Neutral : UnknownTeamPolicy::Error};
}

std::vector<Fixture> load_fixture_list(const RunConfig& cfg, const Model& model) {
    if (cfg.fixtures_path) {
        const auto content = read_file(*cfg.fixtures_path);
        return with_file(*cfg.fixtures_path, [&] { return load_fixtures(content); });
    }
    std::set<std::string> teams;
    if (!cfg.teams.empty()) {
        teams.insert(cfg.teams.begin(), cfg.teams.end());
    } else {
        for (const auto& [team, s] : model.table.entries()) teams.insert(team);
    }
    return round_robin_fixtures(teams);
}

std::string strengths_text(const Model& m) {
    std::ostringstream out;
    const auto& l = m.league;
    if (m.estimated) {
        out << "League averages\n"
            << "  home scored     " << fmt6(l.home_scored) << "\n"
            << "  home conceded   " << fmt6(l.home_conceded) << "\n"
            << "  away scored     " << fmt6(l.away_scored) << "\n"
            << "  away conceded   " << fmt6(l.away_conceded) << "\n";
    }
    out << "  overall home    " << fmt6(l.overall_home) << "\n"
        << "  overall away    " << fmt6(l.overall_away) << "\n\n";

    std::size_t width = 4;
    for (const auto& [team, s] : m.table.entries()) width = std::max(width, team.size());
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-*s  %10s  %11s  %10s  %11s\n", static_cast<int>(width), "Team", "HomeAttack",
                  "HomeDefense", "AwayAttack", "AwayDefense");
    out << buf;
    for (const auto& [team, s] : m.table.entries()) {
        std::snprintf(buf, sizeof buf, "%-*s  %10.6f  %11.6f  %10.6f  %11.6f\n", static_cast<int>(width), team.c_str(),
                      s.home_attack, s.home_defense, s.away_attack, s.away_defense);
        out << buf;
    }
    return out.str();
}

std::string forecast_text(const std::string& home, const std::string& away, const MatchForecast& f) {
    std::ostringstream out;
    out << home << " vs " << away << "\n"
        << "  lambda home          " << fmt6(f.rates.home) << "\n"
        << "  lambda away          " << fmt6(f.rates.away) << "\n"
        << "  P(home win)          " << fmt6(f.prob_home_win) << "\n"
        << "  P(draw)              " << fmt6(f.prob_draw) << "\n"
        << "  P(away win)          " << fmt6(f.prob_away_win) << "\n"
        << "  expected points home " << fmt6(f.expected_points_home) << "\n"
        << "  expected points away " << fmt6(f.expected_points_away) << "\n"
        << "  grid coverage        " << fmt6(f.grid_coverage) << " (goal cap " << f.goal_cap << ")\n";
    return out.str();
}

std::string forecast_csv(const std::string& home, const std::string& away, const MatchForecast& f) {
    std::ostringstream out;
    out << "HomeTeam,AwayTeam,LambdaHome,LambdaAway,ProbHome,ProbDraw,ProbAway,ExpPointsHome,ExpPointsAway,"
           "Coverage,GoalCap\n"
        << home << ',' << away << ',' << fmt6(f.rates.home) << ',' << fmt6(f.rates.away) << ','
        << fmt6(f.prob_home_win) << ',' << fmt6(f.prob_draw) << ',' << fmt6(f.prob_away_win) << ','
        << fmt6(f.expected_points_home) << ',' << fmt6(f.expected_points_away) << ',' << fmt6(f.grid_coverage) << ','
        << f.goal_cap << '\n';
    return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (!cfg.output) {
        out << text;
        return;
    }
    std::ofstream file(*cfg.output, std::ios::binary);
    if (!file) throw Error("cannot write '" + *cfg.output + "'");
    file << text;
}

void add_data_options(CLI::App& sub, RunConfig& cfg, bool with_strengths_file) {
    auto* matches = sub.add_option("--matches", cfg.matches, "Match-result CSV files (football-data.co.uk layout)")
                        ->check(CLI::ExistingFile);
    sub.add_option("--season", cfg.season, "Season label for the match files, e.g. 2018-19");
    sub.add_option("--window", cfg.window, "Season window to pool, e.g. 2015-16..2019-20");
    sub.add_option("--alias", cfg.aliases, "Rename a team before estimation: FROM=TO");
    sub.add_flag("--allow-duplicates", cfg.allow_duplicates, "Keep repeated identical match rows");
    if (with_strengths_file) {
        auto* strengths =
            sub.add_option("--strengths", cfg.strengths_path, "Strength table (CSV or JSON) instead of --matches")
                ->check(CLI::ExistingFile);
        matches->excludes(strengths);
        strengths->excludes(matches);
        sub.add_option("--home-rate", cfg.home_rate, "Overall home scoring multiplier for a loaded table");
        sub.add_option("--away-rate", cfg.away_rate, "Overall away scoring multiplier for a loaded table");
    }
}

void add_common_options(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("--goal-cap", cfg.goal_cap, "Largest goal count on the score grid")
        ->check(CLI::Range(1, 200))
        ->capture_default_str();
    sub.add_flag("--neutral-fallback", cfg.neutral_fallback, "Give unknown teams the all-1.0 strength vector");
    sub.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    sub.add_option("-o,--output", cfg.output, "Write to this file instead of stdout");
}

void add_fixture_options(CLI::App& sub, RunConfig& cfg) {
    auto* fixtures =
        sub.add_option("--fixtures", cfg.fixtures_path, "Fixture CSV with HomeTeam,AwayTeam")->check(CLI::ExistingFile);
    auto* rr = sub.add_flag("--round-robin", cfg.round_robin, "Generate a full double round robin");
    fixtures->excludes(rr);
    rr->excludes(fixtures);
    sub.add_option("--teams", cfg.teams, "Teams for --round-robin (default: every team in the table)")
        ->delimiter(',')
        ->needs(rr);
}

void require_source(const RunConfig& cfg) {
    if (cfg.matches.empty() && !cfg.strengths_path) throw UsageError("one of --matches or --strengths is required");
}

void require_fixtures(const RunConfig& cfg) {
    if (!cfg.fixtures_path && !cfg.round_robin) throw UsageError("one of --fixtures or --round-robin is required");
}

}  // namespace

std::string repro_recipe_text() {
    std::ostringstream out;
    out << R"(Reproducing the Newcastle United takeover forecast

1. Download the English top-flight result files (football-data.co.uk, E0):
)";
    for (const char* s : {"0506", "0607", "0708", "0809", "0910", "1516", "1617", "1718", "1819", "1920"}) {
        out << "     https://www.football-data.co.uk/mmz4281/" << s << "/E0.csv  ->  data/" << s << "/E0.csv\n";
    }
    out << R"(
   The season is read from the directory name (1819 -> 2018-19).

2. Manchester City before the takeover (pooled 2005-06..2008-09):
     leaguecast strengths --matches data/0506/E0.csv data/0607/E0.csv \
         data/0708/E0.csv data/0809/E0.csv --window 2005-06..2008-09
   Man City should read about 0.797301 0.890951 0.958914 1.005413.

3. Manchester City after the takeover (2009-10 alone):
     leaguecast strengths --matches data/0910/E0.csv --window 2009-10
   Man City should read about 1.271318 0.980392 1.568627 0.775194.

4. Baseline standings: strengths pooled over 2015-16..2019-20, fixtures of
   the 2018-19 team set (a full double round robin of 380 matches):
     leaguecast simulate --matches data/1516/E0.csv data/1617/E0.csv \
         data/1718/E0.csv data/1819/E0.csv data/1920/E0.csv \
         --window 2015-16..2019-20 --fixtures data/1819/E0.csv
   Newcastle lands near rank 13 with about 45.07 expected points.

5. Takeover scenario: transplant City's 2009-10 vector onto Newcastle,
   league averages frozen at baseline. Save as newcastle_takeover.json:
     {"team": "Newcastle", "label": "Newcastle with Man City 2009-10 strengths",
      "transplant": [1.271318, 0.980392, 1.568627, 0.775194]}
   then run the step 4 command with `scenario --spec newcastle_takeover.json`
   in place of `simulate`. Newcastle moves to about rank 7 with about
   63.79 expected points.
)";
    return out.str();
}

std::string repro_recipe_json() {
    json files = json::array();
    for (const char* s : {"0506", "0607", "0708", "0809", "0910", "1516", "1617", "1718", "1819", "1920"}) {
        files.push_back({{"url", std::string("https://www.football-data.co.uk/mmz4281/") + s + "/E0.csv"},
                         {"path", std::string("data/") + s + "/E0.csv"},
                         {"season", season_label(*season_start_year(s))}});
    }
    const json doc = {
        {"files", files},
        {"windows",
         {{"man_city_before", "2005-06..2008-09"},
          {"man_city_after", "2009-10"},
          {"newcastle_baseline", "2015-16..2019-20"}}},
        {"fixtures", "data/1819/E0.csv"},
        {"goal_cap", kDefaultGoalCap},
        {"scenario",
         {{"team", "Newcastle"},
          {"label", "Newcastle with Man City 2009-10 strengths"},
          {"transplant", {1.271318, 0.980392, 1.568627, 0.775194}}}},
        {"expected",
         {{"baseline", {{"team", "Newcastle"}, {"rank", 13}, {"points", 45.066317}}},
          {"scenario", {{"team", "Newcastle"}, {"rank", 7}, {"points", 63.786796}}}}}};
    return dump(doc);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"League forecasting with a truncated independent-Poisson score model", "leaguecast"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* strengths = app.add_subcommand("strengths", "Estimate team strength vectors and league averages");
    add_data_options(*strengths, cfg, false);
    add_common_options(*strengths, cfg);

    std::string home, away;
    auto* predict = app.add_subcommand("predict", "Forecast one match");
    predict->add_option("home", home, "Home team")->required();
    predict->add_option("away", away, "Away team")->required();
    add_data_options(*predict, cfg, true);
    add_common_options(*predict, cfg);

    auto* simulate = app.add_subcommand("simulate", "Expected-points standings over a fixture list");
    add_data_options(*simulate, cfg, true);
    add_fixture_options(*simulate, cfg);
    add_common_options(*simulate, cfg);

    std::string spec_path;
    auto* scenario = app.add_subcommand("scenario", "Compare baseline standings with a strength edit");
    scenario->add_option("--spec", spec_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
    scenario->add_flag("--renormalize", cfg.renormalize, "Recompute league averages and ratios after the edit");
    add_data_options(*scenario, cfg, true);
    add_fixture_options(*scenario, cfg);
    add_common_options(*scenario, cfg);

    auto* repro = app.add_subcommand("repro", "Print the recipe reproducing the takeover experiment");
    repro->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    repro->add_option("-o,--output", cfg.output, "Write to this file instead of stdout");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*repro) {
            emit(cfg, cfg.format == "json" ? repro_recipe_json() : repro_recipe_text(), out);
            return kExitOk;
        }

        if (*strengths) {
            if (cfg.matches.empty()) throw UsageError("--matches is required");
            const auto model = load_model(cfg);
            std::string text;
            if (cfg.format == "csv") {
                text = strengths_to_csv(model.table);
            } else if (cfg.format == "json") {
                text = dump(strengths_to_json(model.table, model.league));
            } else {
                text = strengths_text(model);
            }
            emit(cfg, text, out);
            return kExitOk;
        }

        require_source(cfg);
        const auto model = load_model(cfg);
        const auto sim = sim_options(cfg);

        if (*predict) {
            const auto f = predict_match(home, away, model.table, model.league, sim.policy, sim.goal_cap);
            std::string text;
            if (cfg.format == "json") {
                auto j = to_json(f);
                j["home_team"] = home;
                j["away_team"] = away;
                text = dump(j);
            } else if (cfg.format == "csv") {
                text = forecast_csv(home, away, f);
            } else {
                text = forecast_text(home, away, f);
            }
            emit(cfg, text, out);
            return kExitOk;
        }

        require_fixtures(cfg);
        const auto fixtures = load_fixture_list(cfg, model);

        if (*simulate) {
            const auto table = simulate_standings(fixtures, model.table, model.league, sim);
            std::string text;
            if (cfg.format == "json") {
                text = dump(to_json(table));
            } else if (cfg.format == "csv") {
                text = standings_to_csv(table);
            } else {
                text = standings_to_text(table);
            }
            emit(cfg, text, out);
            return kExitOk;
        }

        // scenario
        const auto spec_dir = fs::path(spec_path).parent_path();
        const DonorLookup lookup = [&](const std::string& team, const std::optional<std::string>& table_path) {
            if (!table_path) return model.table.resolve(team, UnknownTeamPolicy::Error);
            fs::path p(*table_path);
            if (p.is_relative()) p = spec_dir / p;
            const auto content = read_file(p.string());
            const auto first = content.find_first_not_of(" \t\r\n");
            const StrengthTable donor_table = (first != std::string::npos && content[first] == '{')
                                                  ? strengths_from_json(json::parse(content)).table
                                                  : strengths_from_csv(content);
            return donor_table.resolve(team, UnknownTeamPolicy::Error);
        };
        const auto spec_text = read_file(spec_path);
        const auto spec = with_file(spec_path, [&] { return scenario_from_json(json::parse(spec_text), lookup); });
        const auto report = compare_scenarios(fixtures, model.table, model.league, spec, {sim, cfg.renormalize});
        std::string text;
        if (cfg.format == "json") {
            text = dump(to_json(report));
        } else if (cfg.format == "csv") {
            std::ostringstream csv;
            csv << "Team,BaseRank,BasePoints,ScenarioRank,ScenarioPoints,Delta\n";
            for (const auto& b : report.baseline.rows) {
                const auto* c = report.counterfactual.find(b.team);
                csv << csv::escape(b.team) << ',' << b.rank << ',' << fmt6(b.expected_points) << ',' << c->rank << ','
                    << fmt6(c->expected_points) << ',' << fmt6(report.per_team_point_delta.at(b.team)) << '\n';
            }
            text = csv.str();
        } else {
            text = report_to_text(report);
        }
        emit(cfg, text, out);
        return kExitOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
}

}  // namespace leaguecast::cli
