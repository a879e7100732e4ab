"""League forecasting with a truncated independent-Poisson score model."""

from ._core import (
    Dataset,
    Fixture,
    LeagueAverages,
    MatchForecast,
    MatchRates,
    MatchRecord,
    ScenarioReport,
    StandingsRow,
    StandingsTable,
    StrengthModel,
    StrengthTable,
    StrengthVector,
    TeamGoalAverages,
    LeaguecastError,
    compare_scenarios,
    estimate_strengths,
    forecast,
    league_averages,
    load_fixtures,
    match_rates,
    normalize_strengths,
    parse_csv,
    poisson_pmf,
    pool_seasons,
    predict_match,
    round_robin_fixtures,
    run_cli,
    scale_scenario,
    simulate_standings,
    team_goal_averages,
    transplant_scenario,
    apply_scenario,
)

__all__ = [name for name in dir() if not name.startswith("_")]
