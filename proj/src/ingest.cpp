#include "leaguecast/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <regex>
#include <sstream>
#include <tuple>

#include "leaguecast/csv.hpp"
#include "leaguecast/errors.hpp"

namespace leaguecast {

namespace {

std::optional<int> parse_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    int value = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

// dd/mm/yy or dd/mm/yyyy. Two-digit years pivot at 50.
std::optional<Date> parse_date(std::string_view s) {
    const auto p1 = s.find('/');
    if (p1 == std::string_view::npos) return std::nullopt;
    const auto p2 = s.find('/', p1 + 1);
    if (p2 == std::string_view::npos) return std::nullopt;
    const auto day = parse_int(s.substr(0, p1));
    const auto month = parse_int(s.substr(p1 + 1, p2 - p1 - 1));
    const auto year_text = s.substr(p2 + 1);
    auto year = parse_int(year_text);
    if (!day || !month || !year) return std::nullopt;
    if (year_text.size() == 2) {
        *year += *year < 50 ? 2000 : 1900;
    } else if (year_text.size() != 4) {
        return std::nullopt;
    }
    const Date d{std::chrono::year{*year}, std::chrono::month{static_cast<unsigned>(*month)},
                 std::chrono::day{static_cast<unsigned>(*day)}};
    if (!d.ok()) return std::nullopt;
    return d;
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02u/%02u/%04d", static_cast<unsigned>(d.day()),
                  static_cast<unsigned>(d.month()), static_cast<int>(d.year()));
    return buf;
}

std::string canonical_team(std::string_view raw, const std::map<std::string, std::string>& aliases) {
    auto name = csv::trim(raw);
    if (auto it = aliases.find(name); it != aliases.end()) return it->second;
    return name;
}

using RecordKey = std::tuple<std::optional<Date>, std::string, std::string, int, int>;

RecordKey key_of(const MatchRecord& r) {
    return {r.date, r.home_team, r.away_team, r.home_goals, r.away_goals};
}

}  // namespace

Dataset Dataset::from_records(std::vector<MatchRecord> records) {
    Dataset d;
    for (const auto& r : records) {
        if (r.home_team.empty() || r.away_team.empty()) throw Error("record with empty team name");
        if (r.home_team == r.away_team) throw Error("record where '" + r.home_team + "' plays itself");
        if (r.home_goals < 0 || r.away_goals < 0) throw Error("record with negative goals");
        d.teams_.insert(r.home_team);
        d.teams_.insert(r.away_team);
        if (!r.season.empty()) d.seasons_.insert(r.season);
    }
    d.records_ = std::move(records);
    return d;
}

ParseReport parse_csv_report(std::string_view content, const ParseOptions& options) {
    const auto rows = csv::read(content);
    if (rows.empty()) throw EmptyFile();

    const csv::Header header(rows.front());
    const auto home_col = header.require("HomeTeam");
    const auto away_col = header.require("AwayTeam");
    const auto hg_col = header.require("FTHG");
    const auto ag_col = header.require("FTAG");
    const auto date_col = header.find("Date");

    if (rows.size() == 1) throw EmptyFile();

    std::optional<int> season_year;
    if (options.season) {
        season_year = season_start_year(*options.season);
        if (!season_year) throw Error("unrecognised season label '" + *options.season + "'");
    }

    ParseReport report;
    std::map<RecordKey, std::size_t> seen;

    for (std::size_t i = 1; i < rows.size(); ++i) {
        const std::size_t row_index = i;
        const auto& fields = rows[i].fields;
        ++report.data_rows;

        auto field = [&](std::size_t col) -> std::string {
            return col < fields.size() ? csv::trim(fields[col]) : std::string{};
        };
        auto fail = [&](std::string reason) {
            report.errors.push_back({row_index, std::move(reason), std::nullopt});
        };

        MatchRecord rec;
        rec.home_team = canonical_team(field(home_col), options.aliases);
        rec.away_team = canonical_team(field(away_col), options.aliases);
        if (rec.home_team.empty() || rec.away_team.empty()) {
            fail("missing team name");
            continue;
        }
        if (rec.home_team == rec.away_team) {
            fail("team '" + rec.home_team + "' listed on both sides");
            continue;
        }

        const auto hg_text = field(hg_col);
        const auto ag_text = field(ag_col);
        if (hg_text.empty() || ag_text.empty()) {
            fail("missing full-time goals");
            continue;
        }
        const auto hg = parse_int(hg_text);
        const auto ag = parse_int(ag_text);
        if (!hg || *hg < 0) {
            fail("FTHG '" + hg_text + "' is not a non-negative integer");
            continue;
        }
        if (!ag || *ag < 0) {
            fail("FTAG '" + ag_text + "' is not a non-negative integer");
            continue;
        }
        rec.home_goals = *hg;
        rec.away_goals = *ag;

        if (date_col) {
            const auto text = field(*date_col);
            if (!text.empty()) {
                rec.date = parse_date(text);
                if (!rec.date) {
                    fail("bad date '" + text + "'");
                    continue;
                }
            }
        }

        if (season_year) {
            rec.season = season_label(*season_year);
            if (rec.date && !date_in_season(*rec.date, *season_year)) {
                fail("date " + format_date(*rec.date) + " is outside season " + rec.season);
                continue;
            }
        }

        if (!options.allow_duplicates) {
            auto [it, inserted] = seen.emplace(key_of(rec), row_index);
            if (!inserted) {
                report.errors.push_back(
                    {row_index, "duplicate of row " + std::to_string(it->second), it->second});
                continue;
            }
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

Dataset parse_csv(std::string_view content, const ParseOptions& options) {
    auto report = parse_csv_report(content, options);
    if (!report.errors.empty()) {
        const auto& e = report.errors.front();
        if (e.duplicate_of) throw DuplicateRecord(e.row, *e.duplicate_of);
        throw MalformedRow(e.row, e.reason);
    }
    return Dataset::from_records(std::move(report.records));
}

std::string to_csv(const Dataset& data) {
    std::ostringstream out;
    out << "Date,HomeTeam,AwayTeam,FTHG,FTAG\n";
    for (const auto& r : data.records()) {
        out << (r.date ? format_date(*r.date) : std::string{}) << ',' << csv::escape(r.home_team) << ','
            << csv::escape(r.away_team) << ',' << r.home_goals << ',' << r.away_goals << '\n';
    }
    return out.str();
}

std::optional<int> season_start_year(std::string_view label) {
    static const std::regex long_form(R"(^(\d{4})[-/](\d{2}|\d{4})$)");
    static const std::regex short_form(R"(^(\d{2})(\d{2})$)");
    const std::string s = csv::trim(label);
    std::smatch m;
    if (std::regex_match(s, m, long_form)) {
        const int start = std::stoi(m[1].str());
        const int end = std::stoi(m[2].str());
        const int expected = m[2].length() == 2 ? (start + 1) % 100 : start + 1;
        if (end != expected) return std::nullopt;
        return start;
    }
    if (std::regex_match(s, m, short_form)) {
        const int a = std::stoi(m[1].str());
        const int b = std::stoi(m[2].str());
        if ((a + 1) % 100 != b) return std::nullopt;
        return a + (a < 50 ? 2000 : 1900);
    }
    return std::nullopt;
}

std::string season_label(int start_year) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", start_year, (start_year + 1) % 100);
    return buf;
}

std::optional<std::string> season_from_path(std::string_view path) {
    static const std::regex token(R"((\d{4}[-_](?:\d{4}|\d{2}))|(\d{4}))");
    std::vector<std::string> parts;
    std::string current;
    for (char c : path) {
        if (c == '/' || c == '\\') {
            parts.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(std::move(current));

    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        const std::string& part = *it;
        for (std::sregex_iterator m(part.begin(), part.end(), token), end; m != end; ++m) {
            std::string candidate = m->str();
            std::replace(candidate.begin(), candidate.end(), '_', '-');
            if (auto year = season_start_year(candidate)) return season_label(*year);
        }
    }
    return std::nullopt;
}

bool date_in_season(const Date& date, int start_year) {
    using namespace std::chrono;
    const Date first{year{start_year}, July, day{1}};
    const Date last{year{start_year + 1}, August, day{31}};
    return sys_days{date} >= sys_days{first} && sys_days{date} <= sys_days{last};
}

SeasonWindow SeasonWindow::parse(std::string_view text) {
    std::string s = csv::trim(text);
    std::string first_text = s, last_text = s;
    if (auto pos = s.find(".."); pos != std::string::npos) {
        first_text = s.substr(0, pos);
        last_text = s.substr(pos + 2);
    } else if (auto colon = s.find(':'); colon != std::string::npos) {
        first_text = s.substr(0, colon);
        last_text = s.substr(colon + 1);
    }
    const auto first = season_start_year(first_text);
    const auto last = season_start_year(last_text);
    if (!first || !last) throw Error("bad season window '" + s + "'");
    if (*first > *last) throw Error("season window '" + s + "' runs backwards");
    return {*first, *last};
}

bool SeasonWindow::contains(std::string_view season) const {
    const auto year = season_start_year(season);
    return year && *year >= first && *year <= last;
}

std::string SeasonWindow::to_string() const {
    return first == last ? season_label(first) : season_label(first) + ".." + season_label(last);
}

Dataset pool_seasons(std::span<const Dataset> datasets, const SeasonWindow& window) {
    std::vector<std::pair<int, const MatchRecord*>> picked;
    for (const auto& d : datasets) {
        for (const auto& r : d.records()) {
            if (auto year = season_start_year(r.season); year && window.contains(r.season)) {
                picked.emplace_back(*year, &r);
            }
        }
    }
    if (picked.empty()) throw EmptyWindow(window.to_string());
    std::stable_sort(picked.begin(), picked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<MatchRecord> records;
    records.reserve(picked.size());
    for (const auto& [year, rec] : picked) records.push_back(*rec);
    return Dataset::from_records(std::move(records));
}

}  // namespace leaguecast
