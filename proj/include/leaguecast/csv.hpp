#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace leaguecast::csv {

/// One physical record of a CSV document. `line` is the 1-based line on
/// which the record starts.
struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// Splits RFC 4180-style content into rows. Handles a UTF-8 BOM, CRLF line
/// endings and double-quoted fields. Rows whose fields are all empty (the
/// trailing ",,,," lines common in exported sheets) are dropped.
std::vector<Row> read(std::string_view content);

/// Header lookup by exact (trimmed) column name.
class Header {
public:
    explicit Header(const Row& header);

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws MissingColumn when absent.
    std::size_t require(std::string_view name) const;

private:
    std::vector<std::string> names_;
};

std::string trim(std::string_view s);

/// Quotes a field only when it contains a separator, quote or newline.
std::string escape(std::string_view field);

}  // namespace leaguecast::csv
