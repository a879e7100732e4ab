#pragma once

// Synthetic season files in the football-data.co.uk layout.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace support {

inline std::vector<std::string> team_names(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "Team %02d", i + 1);
        out.emplace_back(buf);
    }
    return out;
}

/// Full double round robin with Poisson goals drawn from per-team rates.
/// Dates run weekly from the second Saturday of August of `start_year`.
inline std::string synthetic_season(const std::vector<std::string>& teams, int start_year, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> quality(0.6, 1.6);
    std::vector<double> attack, defense;
    for (std::size_t i = 0; i < teams.size(); ++i) {
        attack.push_back(quality(rng));
        defense.push_back(quality(rng));
    }

    std::ostringstream out;
    out << "Div,Date,HomeTeam,AwayTeam,FTHG,FTAG,FTR\n";
    int match = 0;
    for (std::size_t h = 0; h < teams.size(); ++h) {
        for (std::size_t a = 0; a < teams.size(); ++a) {
            if (h == a) continue;
            std::poisson_distribution<int> hg(1.5 * attack[h] / defense[a]);
            std::poisson_distribution<int> ag(1.2 * attack[a] / defense[h]);
            const int x = hg(rng), y = ag(rng);
            // ~10 matches per day, 28-day months keep the arithmetic simple.
            const int day_index = match / 10;
            const int month_offset = day_index / 28;
            const int day = day_index % 28 + 1;
            int month = 8 + month_offset;
            int year = start_year;
            if (month > 12) {
                month -= 12;
                year += 1;
            }
            char date[16];
            std::snprintf(date, sizeof date, "%02d/%02d/%02d", day, month, year % 100);
            out << "E0," << date << ',' << teams[h] << ',' << teams[a] << ',' << x << ',' << y << ','
                << (x > y ? 'H' : x < y ? 'A' : 'D') << '\n';
            ++match;
        }
    }
    return out.str();
}

/// Same rows, header first, data rows shuffled.
inline std::string shuffle_rows(const std::string& csv, std::uint64_t seed) {
    std::istringstream in(csv);
    std::string header, line;
    std::getline(in, header);
    std::vector<std::string> rows;
    while (std::getline(in, line))
        if (!line.empty()) rows.push_back(line);
    std::mt19937_64 rng(seed);
    std::shuffle(rows.begin(), rows.end(), rng);
    std::string out = header + "\n";
    for (const auto& r : rows) out += r + "\n";
    return out;
}

}  // namespace support
