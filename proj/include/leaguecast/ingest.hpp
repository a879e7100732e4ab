#pragma once

// Match-result ingestion for the football-data.co.uk CSV dialect.

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace leaguecast {

using Date = std::chrono::year_month_day;

/// One completed fixture.
struct MatchRecord {
    std::string home_team;
    std::string away_team;
    int home_goals = 0;
    int away_goals = 0;
    std::optional<Date> date;
    std::string season;  // "2018-19"; empty when unknown

    friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

/// Records plus the derived team and season sets. Built only through
/// `Dataset::from_records` so the sets always agree with the records.
class Dataset {
public:
    Dataset() = default;
    static Dataset from_records(std::vector<MatchRecord> records);

    const std::vector<MatchRecord>& records() const noexcept { return records_; }
    const std::set<std::string>& teams() const noexcept { return teams_; }
    const std::set<std::string>& seasons() const noexcept { return seasons_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<MatchRecord> records_;
    std::set<std::string> teams_;
    std::set<std::string> seasons_;
};

struct ParseOptions {
    /// Season label for every row, e.g. "2018-19". Never guessed from dates.
    std::optional<std::string> season;
    /// Exact-match renames applied after trimming, e.g. {"Man City", "Manchester City"}.
    std::map<std::string, std::string> aliases;
    bool allow_duplicates = false;
};

/// A row that failed to parse, with its 1-based data-row index.
struct RowError {
    std::size_t row = 0;
    std::string reason;
    std::optional<std::size_t> duplicate_of;
};

struct ParseReport {
    std::vector<MatchRecord> records;
    std::vector<RowError> errors;
    std::size_t data_rows = 0;  // records.size() + errors.size()
};

/// Parses every data row, collecting row errors instead of throwing on them.
/// Header problems (MissingColumn, EmptyFile) still throw.
ParseReport parse_csv_report(std::string_view content, const ParseOptions& options = {});

/// Strict parse: throws MalformedRow/DuplicateRecord for the first bad row.
Dataset parse_csv(std::string_view content, const ParseOptions& options = {});

/// Canonical re-emission: Date,HomeTeam,AwayTeam,FTHG,FTAG with dd/mm/yyyy dates.
std::string to_csv(const Dataset& data);

// --- seasons -----------------------------------------------------------

/// Parses "2018-19", "2018/19", "2018-2019" or "1819" and returns the
/// starting calendar year. Returns nullopt for anything else.
std::optional<int> season_start_year(std::string_view label);
std::string season_label(int start_year);

/// Looks for a season token in a file path, e.g. "data/1819/E0.csv" or
/// "E0_2018-19.csv". The file name is searched before parent directories.
std::optional<std::string> season_from_path(std::string_view path);

/// True when `date` lies in [1 Jul start, 31 Aug start+1], which admits the
/// late finishes of interrupted seasons.
bool date_in_season(const Date& date, int start_year);

/// Inclusive range of seasons by starting year.
struct SeasonWindow {
    int first = 0;
    int last = 0;

    /// Accepts "2015-16:2019-20", "2015-16..2019-20" or a single season.
    static SeasonWindow parse(std::string_view text);
    bool contains(std::string_view season) const;
    std::string to_string() const;
};

/// Concatenates the records inside `window`, seasons in chronological order
/// and file order within each season. Throws EmptyWindow.
Dataset pool_seasons(std::span<const Dataset> datasets, const SeasonWindow& window);

}  // namespace leaguecast
