#pragma once

// Independent-Poisson score model over a truncated goal grid.

#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "leaguecast/strength.hpp"

namespace leaguecast {

inline constexpr int kDefaultGoalCap = 10;

/// λ^x e^{-λ} / x!, by the recurrence pmf(x) = pmf(x-1)·λ/x from e^{-λ}.
/// Falls back to log space when e^{-λ} underflows. Throws DomainError for
/// negative or non-finite arguments.
double poisson_pmf(int x, double lambda);

/// pmf(0..cap, λ) in one pass of the same recurrence.
std::vector<double> poisson_pmf_row(double lambda, int cap);

struct MatchRates {
    double home = 0.0;  // expected home goals
    double away = 0.0;  // expected away goals
};

struct MatchForecast {
    MatchRates rates;
    double prob_home_win = 0.0;
    double prob_away_win = 0.0;
    double prob_draw = 0.0;
    double expected_points_home = 0.0;  // 3·P(H) + P(D)
    double expected_points_away = 0.0;  // 3·P(A) + P(D)
    /// Mass inside the 0..goal_cap grid; the truncated remainder is not
    /// redistributed.
    double grid_coverage = 0.0;
    int goal_cap = kDefaultGoalCap;
};

MatchRates match_rates(const StrengthVector& home, const StrengthVector& away, const LeagueAverages& league);

/// Throws DomainError when goal_cap < 1 or a rate is negative/non-finite.
MatchForecast forecast(const MatchRates& rates, int goal_cap = kDefaultGoalCap);

/// P(home scores x and away scores y); zero outside the grid.
double scoreline_probability(const MatchRates& rates, int home_goals, int away_goals);

/// Full (cap+1)×(cap+1) grid, row = home goals.
std::vector<std::vector<double>> score_grid(const MatchRates& rates, int goal_cap = kDefaultGoalCap);

MatchForecast predict_match(std::string_view home_team, std::string_view away_team, const StrengthTable& strengths,
                            const LeagueAverages& league, UnknownTeamPolicy policy = UnknownTeamPolicy::Error,
                            int goal_cap = kDefaultGoalCap);

nlohmann::json to_json(const MatchForecast& f);
MatchForecast forecast_from_json(const nlohmann::json& doc);

}  // namespace leaguecast
