#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace leaguecast {

/// Base class for every error raised by the library. All of them are data
/// errors from the command line's point of view (exit code 2).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MissingColumn : public Error {
public:
    explicit MissingColumn(std::string column)
        : Error("missing required column '" + column + "'"), column_(std::move(column)) {}

    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

/// A data row that could not be turned into a record. `row` is the 1-based
/// index of the data row (the header is not counted).
class MalformedRow : public Error {
public:
    MalformedRow(std::size_t row, const std::string& reason)
        : Error("row " + std::to_string(row) + ": " + reason), row_(row), reason_(reason) {}

    std::size_t row() const noexcept { return row_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t row_;
    std::string reason_;
};

class DuplicateRecord : public MalformedRow {
public:
    DuplicateRecord(std::size_t row, std::size_t first_row)
        : MalformedRow(row, "duplicate of row " + std::to_string(first_row)) {}
};

class EmptyFile : public Error {
public:
    EmptyFile() : Error("no data rows") {}
};

class EmptyWindow : public Error {
public:
    explicit EmptyWindow(const std::string& window)
        : Error("no records fall inside season window " + window) {}
};

class OneSidedTeam : public Error {
public:
    explicit OneSidedTeam(std::vector<std::string> teams)
        : Error(describe(teams)), teams_(std::move(teams)) {}

    const std::vector<std::string>& teams() const noexcept { return teams_; }

private:
    static std::string describe(const std::vector<std::string>& teams) {
        std::string msg = "teams without both home and away matches:";
        for (const auto& t : teams) msg += " '" + t + "'";
        return msg;
    }

    std::vector<std::string> teams_;
};

class ZeroLeagueAverage : public Error {
public:
    explicit ZeroLeagueAverage(const std::string& which)
        : Error("league average '" + which + "' is zero") {}
};

class DomainError : public Error {
public:
    using Error::Error;
};

class UnknownTeam : public Error {
public:
    explicit UnknownTeam(std::string team, const std::string& context = {})
        : Error("unknown team '" + team + "'" + (context.empty() ? "" : " (" + context + ")")),
          team_(std::move(team)) {}

    const std::string& team() const noexcept { return team_; }

private:
    std::string team_;
};

class TooFewTeams : public Error {
public:
    explicit TooFewTeams(std::size_t n)
        : Error("need at least 2 teams for a round robin, got " + std::to_string(n)) {}
};

/// Invalid scenario or strength document; `path` is a JSON path such as
/// `$.transplant[2]`.
class SpecError : public Error {
public:
    SpecError(std::string path, const std::string& reason)
        : Error(path + ": " + reason), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace leaguecast
