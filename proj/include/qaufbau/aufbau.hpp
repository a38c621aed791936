#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deformation.hpp"
#include "orbital.hpp"
#include "ordering.hpp"

namespace qaufbau {

using OccupancyList = std::vector<std::pair<Orbital, int>>;

struct NobleGas {
    int z;
    std::string symbol;
    OccupancyList configuration; // in conventional filling order
};

/// Noble-gas cores with their conventional (Madelung-ordered) expansions.
inline const std::vector<NobleGas>& noble_gases() {
    static const std::vector<NobleGas> table = [] {
        std::vector<NobleGas> v;
        auto extend = [&](int z, std::string symbol, std::initializer_list<const char*> labels) {
            OccupancyList config = v.empty() ? OccupancyList{} : v.back().configuration;
            for (const char* label : labels) {
                const Orbital o = parse_orbital(label);
                config.emplace_back(o, orbital_capacity(o.l));
            }
            v.push_back({z, std::move(symbol), std::move(config)});
        };
        extend(2, "He", {"1s"});
        extend(10, "Ne", {"2s", "2p"});
        extend(18, "Ar", {"3s", "3p"});
        extend(36, "Kr", {"4s", "3d", "4p"});
        extend(54, "Xe", {"5s", "4d", "5p"});
        extend(86, "Rn", {"6s", "4f", "5d", "6p"});
        return v;
    }();
    return table;
}

inline const NobleGas* find_noble_gas(std::string_view symbol) {
    for (const NobleGas& gas : noble_gases())
        if (gas.symbol == symbol)
            return &gas;
    return nullptr;
}

/// Electron configuration produced by sequential filling. occupancies is the
/// complete list in fill order (a noble core, when present, only abbreviates
/// the rendered form).
struct ElectronConfiguration {
    int z = 1;
    int electron_count = 0;
    OccupancyList occupancies;
    std::optional<std::string> noble_core;
};

inline int total_electrons(const OccupancyList& occupancies) {
    int total = 0;
    for (const auto& [orbital, count] : occupancies)
        total += count;
    return total;
}

inline std::map<Orbital, int> occupancy_multiset(const OccupancyList& occupancies) {
    std::map<Orbital, int> m;
    for (const auto& [orbital, count] : occupancies)
        m[orbital] += count;
    return m;
}

/// Fills `electron_count` electrons into the given orbitals, in order, each
/// up to its 2(2l+1) capacity.
inline OccupancyList fill_along(std::span<const Orbital> order, int electron_count) {
    if (electron_count < 0)
        throw std::invalid_argument("electron count must be >= 0");
    OccupancyList occupancies;
    int remaining = electron_count;
    for (const Orbital& o : order) {
        if (remaining == 0)
            break;
        const int placed = std::min(remaining, orbital_capacity(o.l));
        occupancies.emplace_back(o, placed);
        remaining -= placed;
    }
    if (remaining > 0)
        throw std::invalid_argument("orbital capacity exhausted: " + std::to_string(remaining) +
                                    " of " + std::to_string(electron_count) +
                                    " electrons left unplaced");
    return occupancies;
}

namespace detail {

/// Largest noble gas whose conventional expansion is an exact ordered prefix
/// of the occupancy list (never the whole list).
inline std::optional<std::string> detect_noble_core(const OccupancyList& occupancies) {
    std::optional<std::string> core;
    for (const NobleGas& gas : noble_gases()) {
        const std::size_t len = gas.configuration.size();
        if (occupancies.size() <= len)
            break;
        if (std::equal(gas.configuration.begin(), gas.configuration.end(), occupancies.begin()))
            core = gas.symbol;
    }
    return core;
}

} // namespace detail

/// Builds the configuration of a z-nucleus with the given number of
/// electrons by filling orbitals strictly in ordering-key order over the
/// n <= n_max, l <= l_max universe. No occupancy post-processing is applied:
/// the configuration is exactly what the ordering principle dictates.
inline ElectronConfiguration build_configuration(int z, int electron_count, Deformation d,
                                                 int n_max = 8, int l_max = 3) {
    if (z < 1)
        throw std::invalid_argument("atomic number must be >= 1, got " + std::to_string(z));
    if (electron_count < 0 || electron_count > z)
        throw std::invalid_argument("electron count must lie in 0..z, got " +
                                    std::to_string(electron_count));
    const OrbitalSequence seq = generate_sequence(d, n_max, l_max);
    std::vector<Orbital> order;
    order.reserve(seq.entries.size());
    for (const EnergyKey& key : seq.entries)
        order.push_back(key.orbital);

    ElectronConfiguration config;
    config.z = z;
    config.electron_count = electron_count;
    config.occupancies = fill_along(order, electron_count);
    config.noble_core = detail::detect_noble_core(config.occupancies);
    return config;
}

/// Renders an occupancy list as `[<core>] <n><letter><count> ...`, using the
/// largest noble core whose conventional expansion prefixes the list.
inline std::string render_occupancies(const OccupancyList& occupancies) {
    const std::optional<std::string> core = detail::detect_noble_core(occupancies);
    std::size_t skip = 0;
    std::string out;
    if (core) {
        out = "[" + *core + "]";
        skip = find_noble_gas(*core)->configuration.size();
    }
    for (std::size_t i = skip; i < occupancies.size(); ++i) {
        if (!out.empty())
            out += ' ';
        out += occupancies[i].first.label() + std::to_string(occupancies[i].second);
    }
    return out;
}

inline std::string render_configuration(const ElectronConfiguration& config) {
    return render_occupancies(config.occupancies);
}

/// Parses `[X] 3d5 4s1` style text into an occupancy list, expanding a
/// leading noble core to its conventional ordered configuration.
inline OccupancyList parse_occupancies(std::string_view text) {
    OccupancyList occupancies;

    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ')
            ++pos;
        std::size_t end = pos;
        while (end < text.size() && text[end] != ' ')
            ++end;
        if (end > pos)
            tokens.push_back(text.substr(pos, end - pos));
        pos = end;
    }

    std::size_t first = 0;
    if (!tokens.empty() && tokens[0].size() >= 2 && tokens[0].front() == '[' &&
        tokens[0].back() == ']') {
        const std::string symbol(tokens[0].substr(1, tokens[0].size() - 2));
        const NobleGas* gas = find_noble_gas(symbol);
        if (!gas)
            throw std::invalid_argument("unknown noble-gas core symbol '" + symbol + "'");
        occupancies = gas->configuration;
        first = 1;
    }

    for (std::size_t t = first; t < tokens.size(); ++t) {
        const std::string_view token = tokens[t];
        std::size_t letter = 0;
        while (letter < token.size() && token[letter] >= '0' && token[letter] <= '9')
            ++letter;
        if (letter == 0 || letter + 1 >= token.size())
            throw std::invalid_argument("malformed occupancy token '" + std::string(token) + "'");
        const Orbital orbital = parse_orbital(token.substr(0, letter + 1));
        const std::string count_text(token.substr(letter + 1));
        if (!std::all_of(count_text.begin(), count_text.end(),
                         [](char c) { return c >= '0' && c <= '9'; }))
            throw std::invalid_argument("malformed occupancy token '" + std::string(token) + "'");
        const int count = std::stoi(count_text);
        if (count < 1 || count > orbital_capacity(orbital.l))
            throw std::invalid_argument("occupancy " + std::to_string(count) + " out of range for " +
                                        orbital.label());
        for (const auto& [existing, unused] : occupancies)
            if (existing == orbital)
                throw std::invalid_argument("orbital " + orbital.label() + " listed twice");
        occupancies.emplace_back(orbital, count);
    }
    return occupancies;
}

/// One row of a ground-state reference table.
struct ReferenceConfigRecord {
    int z = 1;
    std::string symbol;
    OccupancyList occupancies;
};

/// CSV ingestion failure, carrying the 1-based source line (0 when no line
/// applies, e.g. an unreadable file).
class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& message, std::size_t line)
        : std::runtime_error(line == 0 ? message
                                       : message + " (line " + std::to_string(line) + ")"),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Reads a `z,symbol,configuration` CSV of neutral ground states. Electron
/// totals are validated against z.
inline std::vector<ReferenceConfigRecord> load_reference_configs(std::istream& in) {
    std::vector<ReferenceConfigRecord> records;
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> bool {
        if (!std::getline(in, line))
            return false;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        return true;
    };

    if (!next_line() || line != "z,symbol,configuration")
        throw CsvError("expected header 'z,symbol,configuration'", line_no == 0 ? 1 : line_no);

    while (next_line()) {
        if (line.empty())
            continue;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos)
            throw CsvError("expected three comma-separated fields", line_no);

        ReferenceConfigRecord record;
        try {
            record.z = std::stoi(line.substr(0, c1));
        } catch (const std::exception&) {
            throw CsvError("malformed atomic number '" + line.substr(0, c1) + "'", line_no);
        }
        if (record.z < 1)
            throw CsvError("atomic number must be >= 1", line_no);
        record.symbol = line.substr(c1 + 1, c2 - c1 - 1);
        if (record.symbol.empty())
            throw CsvError("empty element symbol", line_no);
        try {
            record.occupancies = parse_occupancies(line.substr(c2 + 1));
        } catch (const std::exception& e) {
            throw CsvError(e.what(), line_no);
        }
        if (total_electrons(record.occupancies) != record.z)
            throw CsvError("electron total " + std::to_string(total_electrons(record.occupancies)) +
                               " does not match z = " + std::to_string(record.z),
                           line_no);
        records.push_back(std::move(record));
    }
    return records;
}

/// Elements whose reference ground state differs from sequential filling.
struct ExceptionReport {
    struct Mismatch {
        int z = 0;
        std::string symbol;
        std::string model;
        std::string reference;
    };
    std::size_t compared = 0;
    std::vector<Mismatch> mismatches;

    bool flags(int z) const {
        return std::any_of(mismatches.begin(), mismatches.end(),
                           [z](const Mismatch& m) { return m.z == z; });
    }
};

/// Counts records whose occupancy multiset differs from filling the given
/// orbital order with z electrons. Orbital order within a configuration is
/// ignored; only where the electrons sit matters.
inline ExceptionReport count_exceptions(std::span<const ReferenceConfigRecord> records,
                                        std::span<const Orbital> fill_order) {
    if (records.empty())
        throw std::invalid_argument("no reference records to compare");
    ExceptionReport report;
    report.compared = records.size();
    for (const ReferenceConfigRecord& record : records) {
        const OccupancyList model = fill_along(fill_order, record.z);
        if (occupancy_multiset(model) != occupancy_multiset(record.occupancies))
            report.mismatches.push_back({record.z, record.symbol, render_occupancies(model),
                                         render_occupancies(record.occupancies)});
    }
    return report;
}

/// Same, filling in the model's own orbital order at deformation d.
inline ExceptionReport count_exceptions(std::span<const ReferenceConfigRecord> records,
                                        Deformation d) {
    const OrbitalSequence seq = generate_sequence(d, 8, 3);
    std::vector<Orbital> order;
    order.reserve(seq.entries.size());
    for (const EnergyKey& key : seq.entries)
        order.push_back(key.orbital);
    return count_exceptions(records, order);
}

} // namespace qaufbau
