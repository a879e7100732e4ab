#include "leaguecast/csv.hpp"

#include <algorithm>

#include "leaguecast/errors.hpp"

namespace leaguecast::csv {

namespace {

bool all_blank(const std::vector<std::string>& fields) {
    return std::all_of(fields.begin(), fields.end(),
                       [](const std::string& f) { return trim(f).empty(); });
}

}  // namespace

std::string trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n\v\f";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

std::vector<Row> read(std::string_view content) {
    if (content.starts_with("\xEF\xBB\xBF")) content.remove_prefix(3);

    std::vector<Row> rows;
    Row current;
    std::string field;
    bool in_quotes = false;
    bool row_has_content = false;
    std::size_t line = 1;
    current.line = 1;

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        if (row_has_content && !all_blank(current.fields)) rows.push_back(std::move(current));
        current = Row{};
        row_has_content = false;
    };

    for (std::size_t i = 0; i < content.size(); ++i) {
        const char c = content[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                row_has_content = true;
                break;
            case ',':
                end_field();
                row_has_content = true;
                break;
            case '\r':
                break;
            case '\n':
                end_row();
                ++line;
                current.line = line;
                break;
            default:
                field.push_back(c);
                row_has_content = true;
        }
    }
    if (row_has_content || !field.empty()) end_row();
    return rows;
}

Header::Header(const Row& header) {
    names_.reserve(header.fields.size());
    for (const auto& f : header.fields) names_.push_back(trim(f));
}

std::optional<std::size_t> Header::find(std::string_view name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

std::size_t Header::require(std::string_view name) const {
    if (auto idx = find(name)) return *idx;
    throw MissingColumn(std::string(name));
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace leaguecast::csv
