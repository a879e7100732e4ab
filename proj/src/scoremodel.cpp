#include "leaguecast/scoremodel.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "leaguecast/errors.hpp"
#include "json_util.hpp"

namespace leaguecast {

namespace {

void check_rate(double lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0) {
        throw DomainError("Poisson rate must be finite and non-negative, got " + std::to_string(lambda));
    }
}

double log_space_pmf(int x, double lambda) {
    if (lambda == 0.0) return x == 0 ? 1.0 : 0.0;
    return std::exp(x * std::log(lambda) - lambda - std::lgamma(x + 1.0));
}

}  // namespace

std::vector<double> poisson_pmf_row(double lambda, int cap) {
    check_rate(lambda);
    if (cap < 0) throw DomainError("goal count must be non-negative");
    std::vector<double> row(static_cast<std::size_t>(cap) + 1);
    const double p0 = std::exp(-lambda);
    if (p0 == 0.0) {
        for (int x = 0; x <= cap; ++x) row[x] = log_space_pmf(x, lambda);
        return row;
    }
    row[0] = p0;
    for (int x = 1; x <= cap; ++x) row[x] = row[x - 1] * lambda / x;
    return row;
}

double poisson_pmf(int x, double lambda) {
    if (x < 0) throw DomainError("goal count must be non-negative, got " + std::to_string(x));
    return poisson_pmf_row(lambda, x).back();
}

MatchRates match_rates(const StrengthVector& home, const StrengthVector& away, const LeagueAverages& league) {
    MatchRates r{home.home_attack * away.away_defense * league.overall_home,
                 away.away_attack * home.home_defense * league.overall_away};
    check_rate(r.home);
    check_rate(r.away);
    return r;
}

MatchForecast forecast(const MatchRates& rates, int goal_cap) {
    if (goal_cap < 1) throw DomainError("goal cap must be at least 1");
    const auto home = poisson_pmf_row(rates.home, goal_cap);
    const auto away = poisson_pmf_row(rates.away, goal_cap);

    MatchForecast f;
    f.rates = rates;
    f.goal_cap = goal_cap;
    for (int x = 0; x <= goal_cap; ++x) {
        f.prob_draw += home[x] * away[x];
        for (int y = 0; y < x; ++y) {
            f.prob_home_win += home[x] * away[y];
            f.prob_away_win += home[y] * away[x];
        }
    }
    f.grid_coverage = f.prob_home_win + f.prob_away_win + f.prob_draw;
    f.expected_points_home = 3.0 * f.prob_home_win + f.prob_draw;
    f.expected_points_away = 3.0 * f.prob_away_win + f.prob_draw;
    return f;
}

double scoreline_probability(const MatchRates& rates, int home_goals, int away_goals) {
    if (home_goals < 0 || away_goals < 0) return 0.0;
    return poisson_pmf(home_goals, rates.home) * poisson_pmf(away_goals, rates.away);
}

std::vector<std::vector<double>> score_grid(const MatchRates& rates, int goal_cap) {
    if (goal_cap < 1) throw DomainError("goal cap must be at least 1");
    const auto home = poisson_pmf_row(rates.home, goal_cap);
    const auto away = poisson_pmf_row(rates.away, goal_cap);
    std::vector<std::vector<double>> grid(home.size(), std::vector<double>(away.size()));
    for (std::size_t x = 0; x < home.size(); ++x)
        for (std::size_t y = 0; y < away.size(); ++y) grid[x][y] = home[x] * away[y];
    return grid;
}

MatchForecast predict_match(std::string_view home_team, std::string_view away_team, const StrengthTable& strengths,
                            const LeagueAverages& league, UnknownTeamPolicy policy, int goal_cap) {
    const auto home = strengths.resolve(home_team, policy);
    const auto away = strengths.resolve(away_team, policy);
    return forecast(match_rates(home, away, league), goal_cap);
}

nlohmann::json to_json(const MatchForecast& f) {
    return {{"lambda_home", f.rates.home},
            {"lambda_away", f.rates.away},
            {"prob_home_win", f.prob_home_win},
            {"prob_away_win", f.prob_away_win},
            {"prob_draw", f.prob_draw},
            {"expected_points_home", f.expected_points_home},
            {"expected_points_away", f.expected_points_away},
            {"grid_coverage", f.grid_coverage},
            {"goal_cap", f.goal_cap}};
}

MatchForecast forecast_from_json(const nlohmann::json& doc) {
    json_util::require_object(doc, "$");
    MatchForecast f;
    f.rates.home = json_util::number(doc, "lambda_home", "$");
    f.rates.away = json_util::number(doc, "lambda_away", "$");
    f.prob_home_win = json_util::number(doc, "prob_home_win", "$");
    f.prob_away_win = json_util::number(doc, "prob_away_win", "$");
    f.prob_draw = json_util::number(doc, "prob_draw", "$");
    f.expected_points_home = json_util::number(doc, "expected_points_home", "$");
    f.expected_points_away = json_util::number(doc, "expected_points_away", "$");
    f.grid_coverage = json_util::number(doc, "grid_coverage", "$");
    f.goal_cap = static_cast<int>(json_util::number(doc, "goal_cap", "$"));
    return f;
}

}  // namespace leaguecast
