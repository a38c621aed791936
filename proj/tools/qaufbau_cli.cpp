// Command-line front end: orbital energies, filling orders, reference
// comparisons, deformation scans and electron configurations, with table,
// JSON and CSV output.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qaufbau/qaufbau.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qaufbau;

// 6 significant digits for tables; shortest round-trip form for json/csv.
std::string fmt_table(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string fmt_full(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

enum class Format { table, json, csv };

Format parse_format(const std::string& text) {
    if (text == "table") return Format::table;
    if (text == "json") return Format::json;
    if (text == "csv") return Format::csv;
    throw CLI::ValidationError("--format", "expected table, json or csv");
}

struct SequenceFlags {
    double q = 0.0;
    int n_max = 7;
    int l_max = 3;
    bool full = false;
    std::string format = "table";
};

void add_sequence_flags(CLI::App* cmd, SequenceFlags& flags, bool with_full = true) {
    cmd->add_option("--q", flags.q, "deformation parameter (> 0)")->required();
    cmd->add_option("--n-max", flags.n_max, "largest principal quantum number (1..12)");
    cmd->add_option("--l-max", flags.l_max, "largest orbital quantum number (0..5)");
    if (with_full)
        cmd->add_flag("--full", flags.full,
                      "include orbitals beyond the tabulated 1s..7s/6d series");
    cmd->add_option("--format", flags.format, "output format: table, json or csv");
}

bool is_tabulated(const Orbital& o) {
    const auto& universe = tabulated_orbitals();
    return std::find(universe.begin(), universe.end(), o) != universe.end();
}

// Restricts a sequence to a subset of orbitals, regrouping ties.
OrbitalSequence restrict_sequence(const OrbitalSequence& seq, bool full) {
    if (full)
        return seq;
    OrbitalSequence out;
    out.q = seq.q;
    for (const EnergyKey& key : seq.entries)
        if (is_tabulated(key.orbital))
            out.entries.push_back(key);
    std::size_t i = 0;
    while (i < out.entries.size()) {
        std::size_t j = i + 1;
        while (j < out.entries.size() && keys_tie(out.entries[i].value, out.entries[j].value))
            ++j;
        std::vector<std::size_t> group;
        for (std::size_t k = i; k < j; ++k)
            group.push_back(k);
        out.tie_groups.push_back(std::move(group));
        i = j;
    }
    return out;
}

OrbitalSequence make_sequence(const SequenceFlags& flags) {
    const OrbitalSequence seq =
        generate_sequence(Deformation(flags.q), flags.n_max, flags.l_max);
    return restrict_sequence(seq, flags.full);
}

int cmd_energies(const SequenceFlags& flags) {
    const Format format = parse_format(flags.format);
    const OrbitalSequence seq = make_sequence(flags);
    const Deformation d(flags.q);
    const RotorParameters rotor;

    switch (format) {
    case Format::table: {
        std::printf("%-6s %3s %3s %14s %14s\n", "label", "n", "l", "key", "energy");
        for (const EnergyKey& key : seq.entries)
            std::printf("%-6s %3d %3d %14s %14s\n", key.orbital.label().c_str(), key.orbital.n,
                        key.orbital.l, fmt_table(key.value).c_str(),
                        fmt_table(spectral_energy(key.orbital, d, rotor)).c_str());
        break;
    }
    case Format::csv: {
        std::printf("label,n,l,key,energy\n");
        for (const EnergyKey& key : seq.entries)
            std::printf("%s,%d,%d,%s,%s\n", key.orbital.label().c_str(), key.orbital.n,
                        key.orbital.l, fmt_full(key.value).c_str(),
                        fmt_full(spectral_energy(key.orbital, d, rotor)).c_str());
        break;
    }
    case Format::json: {
        ordered_json out;
        out["q"] = flags.q;
        out["alpha"] = alpha(d);
        out["rotor"] = {{"inertia", rotor.inertia}, {"ground_energy", rotor.ground_energy}};
        out["orbitals"] = ordered_json::array();
        for (const EnergyKey& key : seq.entries)
            out["orbitals"].push_back({{"label", key.orbital.label()},
                                       {"n", key.orbital.n},
                                       {"l", key.orbital.l},
                                       {"key", key.value},
                                       {"energy", spectral_energy(key.orbital, d, rotor)}});
        std::printf("%s\n", out.dump(2).c_str());
        break;
    }
    }
    return 0;
}

int cmd_order(const SequenceFlags& flags) {
    const Format format = parse_format(flags.format);
    const OrbitalSequence seq = make_sequence(flags);

    switch (format) {
    case Format::table:
        std::printf("%s\n", render_sequence(seq).c_str());
        break;
    case Format::csv: {
        std::printf("position,label,n,l,key\n");
        for (std::size_t i = 0; i < seq.entries.size(); ++i)
            std::printf("%zu,%s,%d,%d,%s\n", i, seq.entries[i].orbital.label().c_str(),
                        seq.entries[i].orbital.n, seq.entries[i].orbital.l,
                        fmt_full(seq.entries[i].value).c_str());
        break;
    }
    case Format::json: {
        ordered_json out;
        out["q"] = flags.q;
        out["entries"] = ordered_json::array();
        for (const EnergyKey& key : seq.entries)
            out["entries"].push_back(
                {{"label", key.orbital.label()}, {"key", key.value}});
        out["tie_groups"] = seq.tie_groups;
        out["rendered"] = render_sequence(seq);
        std::printf("%s\n", out.dump(2).c_str());
        break;
    }
    }
    return 0;
}

int cmd_compare(const SequenceFlags& flags, const std::string& reference) {
    const Format format = parse_format(flags.format);
    const ReferenceName name = parse_reference_name(reference);
    const ReferenceSeries& ref = name == ReferenceName::hydrogenic
                                     ? hydrogenic_series(flags.n_max, flags.l_max)
                                     : reference_series(name);
    const OrbitalSequence seq =
        generate_sequence(Deformation(flags.q), flags.n_max, flags.l_max);
    const ComparisonReport report = compare(seq, ref);

    switch (format) {
    case Format::table:
        std::printf("reference:      %s\n", to_string(report.reference).c_str());
        std::printf("exact match:    %s\n", report.exact_match ? "yes" : "no");
        std::printf("matched prefix: %zu of %zu\n", report.matched_prefix_len, ref.entries.size());
        if (report.inversions.empty())
            std::printf("inversions:     none\n");
        else {
            std::printf("inversions:     %zu\n", report.inversions.size());
            for (const auto& inv : report.inversions)
                std::printf("  %s <-> %s  deviation %s%%\n", inv.first.label().c_str(),
                            inv.second.label().c_str(), fmt_table(inv.deviation_percent).c_str());
        }
        break;
    case Format::csv:
        std::printf("reference_first,model_first,deviation_percent\n");
        for (const auto& inv : report.inversions)
            std::printf("%s,%s,%s\n", inv.first.label().c_str(), inv.second.label().c_str(),
                        fmt_full(inv.deviation_percent).c_str());
        break;
    case Format::json: {
        ordered_json out;
        out["q"] = flags.q;
        out["reference"] = to_string(report.reference);
        out["exact_match"] = report.exact_match;
        out["matched_prefix_len"] = report.matched_prefix_len;
        out["reference_len"] = ref.entries.size();
        out["inversions"] = ordered_json::array();
        for (const auto& inv : report.inversions)
            out["inversions"].push_back({{"reference_first", inv.first.label()},
                                         {"model_first", inv.second.label()},
                                         {"deviation_percent", inv.deviation_percent}});
        std::printf("%s\n", out.dump(2).c_str());
        break;
    }
    }
    return 0;
}

int cmd_scan(double q_min, double q_max, double step, const std::string& format_text) {
    const Format format = parse_format(format_text);
    const RegimeProfile profile = classify_regimes(q_min, q_max, step);

    switch (format) {
    case Format::table:
        std::printf("range: [%s, %s] step %s\n", fmt_table(profile.q_lo).c_str(),
                    fmt_table(profile.q_hi).c_str(), fmt_table(profile.step).c_str());
        if (profile.intervals.empty())
            std::printf("intervals: none\n");
        else {
            std::printf("intervals:\n");
            for (const RegimeInterval& iv : profile.intervals)
                std::printf("  [%.9f, %.9f]  %s\n", iv.q_lo, iv.q_hi,
                            to_string(iv.label).c_str());
        }
        if (profile.crossings.empty())
            std::printf("crossings: none\n");
        else {
            std::printf("crossings:\n");
            for (const CrossingEvent& c : profile.crossings)
                std::printf("  %s/%s at q* = %.12f (residual %s)\n", c.first.label().c_str(),
                            c.second.label().c_str(), c.q_star, fmt_table(c.residual).c_str());
        }
        std::printf("recommended q:");
        for (const auto& [physical_case, q] : profile.recommended)
            std::printf(" %s=%s", to_string(physical_case).c_str(), fmt_table(q).c_str());
        std::printf("\n");
        break;
    case Format::csv:
        std::printf("q_lo,q_hi,label\n");
        for (const RegimeInterval& iv : profile.intervals)
            std::printf("%s,%s,%s\n", fmt_full(iv.q_lo).c_str(), fmt_full(iv.q_hi).c_str(),
                        to_string(iv.label).c_str());
        break;
    case Format::json: {
        ordered_json out;
        out["q_min"] = profile.q_lo;
        out["q_max"] = profile.q_hi;
        out["step"] = profile.step;
        out["intervals"] = ordered_json::array();
        for (const RegimeInterval& iv : profile.intervals)
            out["intervals"].push_back({{"q_lo", iv.q_lo},
                                        {"q_hi", iv.q_hi},
                                        {"label", to_string(iv.label)},
                                        {"witness_q", iv.witness_q},
                                        {"witness_exact_match", iv.witness.exact_match}});
        out["crossings"] = ordered_json::array();
        for (const CrossingEvent& c : profile.crossings)
            out["crossings"].push_back({{"first", c.first.label()},
                                        {"second", c.second.label()},
                                        {"q_star", c.q_star},
                                        {"bracket", {c.bracket_lo, c.bracket_hi}},
                                        {"residual", c.residual}});
        out["recommended_q"] = ordered_json::object();
        for (const auto& [physical_case, q] : profile.recommended)
            out["recommended_q"][to_string(physical_case)] = q;
        std::printf("%s\n", out.dump(2).c_str());
        break;
    }
    }
    return 0;
}

int cmd_config(int z, int electrons, double q, const std::string& format_text) {
    const Format format = parse_format(format_text);
    const ElectronConfiguration config = build_configuration(z, electrons, Deformation(q));

    switch (format) {
    case Format::table:
        std::printf("%s\n", render_configuration(config).c_str());
        break;
    case Format::csv:
        std::printf("label,n,l,occupancy\n");
        for (const auto& [orbital, count] : config.occupancies)
            std::printf("%s,%d,%d,%d\n", orbital.label().c_str(), orbital.n, orbital.l, count);
        break;
    case Format::json: {
        ordered_json out;
        out["z"] = config.z;
        out["electrons"] = config.electron_count;
        out["q"] = q;
        out["noble_core"] = config.noble_core ? ordered_json(*config.noble_core) : ordered_json();
        out["occupancies"] = ordered_json::array();
        for (const auto& [orbital, count] : config.occupancies)
            out["occupancies"].push_back({{"label", orbital.label()}, {"occupancy", count}});
        out["rendered"] = render_configuration(config);
        std::printf("%s\n", out.dump(2).c_str());
        break;
    }
    }
    return 0;
}

int cmd_exceptions(double q, const std::string& data_path, const std::string& format_text) {
    const Format format = parse_format(format_text);
    std::ifstream in(data_path);
    if (!in)
        throw CsvError("cannot open '" + data_path + "'", 0);
    const std::vector<ReferenceConfigRecord> records = load_reference_configs(in);
    const ExceptionReport report = count_exceptions(records, Deformation(q));

    switch (format) {
    case Format::table:
        std::printf("records:    %zu\n", report.compared);
        std::printf("exceptions: %zu\n", report.mismatches.size());
        for (const auto& m : report.mismatches)
            std::printf("  z=%-3d %-3s model %s | reference %s\n", m.z, m.symbol.c_str(),
                        m.model.c_str(), m.reference.c_str());
        break;
    case Format::csv:
        std::printf("z,symbol,model,reference\n");
        for (const auto& m : report.mismatches)
            std::printf("%d,%s,%s,%s\n", m.z, m.symbol.c_str(), m.model.c_str(),
                        m.reference.c_str());
        break;
    case Format::json: {
        ordered_json out;
        out["q"] = q;
        out["records"] = report.compared;
        out["exception_count"] = report.mismatches.size();
        out["exceptions"] = ordered_json::array();
        for (const auto& m : report.mismatches)
            out["exceptions"].push_back({{"z", m.z},
                                         {"symbol", m.symbol},
                                         {"model", m.model},
                                         {"reference", m.reference}});
        std::printf("%s\n", out.dump(2).c_str());
        break;
    }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-deformed orbital ordering and electron configurations"};
    app.require_subcommand(1);

    SequenceFlags energies_flags;
    CLI::App* energies = app.add_subcommand("energies", "ordering keys and shell energies");
    add_sequence_flags(energies, energies_flags);

    SequenceFlags order_flags;
    CLI::App* order = app.add_subcommand("order", "orbital filling order");
    add_sequence_flags(order, order_flags);

    SequenceFlags compare_flags;
    std::string reference;
    CLI::App* compare_cmd = app.add_subcommand("compare", "compare against a reference series");
    add_sequence_flags(compare_cmd, compare_flags, /*with_full=*/false);
    compare_cmd->add_option("--reference", reference, "madelung, ion or hydrogenic")->required();

    double q_min = 0.0, q_max = 0.0, scan_step = 0.01;
    std::string scan_format = "table";
    CLI::App* scan = app.add_subcommand("scan", "sweep q and classify regimes");
    scan->add_option("--q-min", q_min, "lower end of the scan")->required();
    scan->add_option("--q-max", q_max, "upper end of the scan (<= 2)")->required();
    scan->add_option("--step", scan_step, "grid step (<= 0.05)");
    scan->add_option("--format", scan_format, "output format: table, json or csv");

    int z = 0, electrons = -1;
    double config_q = 0.0;
    std::string config_format = "table";
    CLI::App* config = app.add_subcommand("config", "electron configuration by sequential filling");
    config->add_option("--z", z, "atomic number")->required();
    config->add_option("--electrons", electrons, "electron count (defaults to z)");
    config->add_option("--q", config_q, "deformation parameter")->required();
    config->add_option("--format", config_format, "output format: table, json or csv");

    double exc_q = 0.0;
    std::string data_path;
    std::string exc_format = "table";
    CLI::App* exceptions = app.add_subcommand("exceptions", "compare against a ground-state table");
    exceptions->add_option("--q", exc_q, "deformation parameter")->required();
    exceptions->add_option("--data", data_path, "CSV of reference ground states")->required();
    exceptions->add_option("--format", exc_format, "output format: table, json or csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (energies->parsed())
            return cmd_energies(energies_flags);
        if (order->parsed())
            return cmd_order(order_flags);
        if (compare_cmd->parsed())
            return cmd_compare(compare_flags, reference);
        if (scan->parsed())
            return cmd_scan(q_min, q_max, scan_step, scan_format);
        if (config->parsed())
            return cmd_config(z, electrons < 0 ? z : electrons, config_q, config_format);
        if (exceptions->parsed())
            return cmd_exceptions(exc_q, data_path, exc_format);
    } catch (const qaufbau::CsvError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
