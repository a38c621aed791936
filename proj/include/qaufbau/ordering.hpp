#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "deformation.hpp"
#include "orbital.hpp"
#include "spectrum.hpp"

namespace qaufbau {

/// Two keys tie when |a - b| <= 1e-9 * max(1, |a|, |b|). The alpha = 0
/// point is exactly degenerate, so a deterministic tie rule is required.
inline double tie_tolerance(double a, double b) {
    return 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline bool keys_tie(double a, double b) {
    return std::fabs(a - b) <= tie_tolerance(a, b);
}

/// Energy-sorted orbital list at a fixed deformation. Entries are sorted by
/// key value ascending with ties broken by (n, l) ascending; tie_groups
/// partitions the entry indices into maximal runs of equal-within-tolerance
/// keys (singleton groups are untied entries).
struct OrbitalSequence {
    double q = 1.0;
    std::vector<EnergyKey> entries;
    std::vector<std::vector<std::size_t>> tie_groups;

    std::optional<std::size_t> position(const Orbital& o) const {
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i].orbital == o)
                return i;
        return std::nullopt;
    }
};

/// All orbitals with n <= n_max and l <= min(n-1, l_max), sorted by the
/// ordering key. Deterministic: equal inputs give bit-identical output.
inline OrbitalSequence generate_sequence(Deformation d, int n_max, int l_max) {
    if (n_max < 1 || n_max > 12)
        throw std::invalid_argument("n_max must lie in 1..12, got " + std::to_string(n_max));
    if (l_max < 0 || l_max > 5)
        throw std::invalid_argument("l_max must lie in 0..5, got " + std::to_string(l_max));

    OrbitalSequence seq;
    seq.q = d.q();
    for (int n = 1; n <= n_max; ++n)
        for (int l = 0; l <= std::min(n - 1, l_max); ++l)
            seq.entries.push_back(epsilon_key(Orbital(n, l), d));

    std::sort(seq.entries.begin(), seq.entries.end(), [](const EnergyKey& a, const EnergyKey& b) {
        if (a.value != b.value)
            return a.value < b.value;
        return a.orbital < b.orbital;
    });

    // Group maximal runs of tied keys, then order each group by (n, l).
    std::size_t i = 0;
    while (i < seq.entries.size()) {
        std::size_t j = i + 1;
        while (j < seq.entries.size() && keys_tie(seq.entries[i].value, seq.entries[j].value))
            ++j;
        std::sort(seq.entries.begin() + static_cast<std::ptrdiff_t>(i),
                  seq.entries.begin() + static_cast<std::ptrdiff_t>(j),
                  [](const EnergyKey& a, const EnergyKey& b) { return a.orbital < b.orbital; });
        std::vector<std::size_t> group;
        for (std::size_t k = i; k < j; ++k)
            group.push_back(k);
        seq.tie_groups.push_back(std::move(group));
        i = j;
    }
    return seq;
}

enum class ReferenceName { madelung, ion, hydrogenic };

inline std::string to_string(ReferenceName name) {
    switch (name) {
    case ReferenceName::madelung: return "madelung";
    case ReferenceName::ion: return "ion";
    case ReferenceName::hydrogenic: return "hydrogenic";
    }
    throw std::logic_error("unreachable reference name");
}

inline ReferenceName parse_reference_name(std::string_view text) {
    if (text == "madelung") return ReferenceName::madelung;
    if (text == "ion") return ReferenceName::ion;
    if (text == "hydrogenic") return ReferenceName::hydrogenic;
    throw std::invalid_argument("unknown reference series '" + std::string(text) +
                                "' (expected madelung, ion or hydrogenic)");
}

/// A canonical filling order to compare against. rare_gas_marks holds the
/// indices of entries preceded by the "<<" separator (madelung only); the
/// separator is series metadata and plays no role in comparisons.
struct ReferenceSeries {
    ReferenceName name = ReferenceName::madelung;
    std::vector<Orbital> entries;
    std::set<std::size_t> rare_gas_marks;

    bool contains(const Orbital& o) const {
        return std::find(entries.begin(), entries.end(), o) != entries.end();
    }
};

namespace detail {

inline std::vector<Orbital> parse_labels(std::initializer_list<const char*> labels) {
    std::vector<Orbital> out;
    for (const char* label : labels)
        out.push_back(parse_orbital(label));
    return out;
}

} // namespace detail

/// Hydrogenic order: by n, then l, over the same grid as generate_sequence.
inline ReferenceSeries hydrogenic_series(int n_max = 7, int l_max = 3) {
    if (n_max < 1 || n_max > 12)
        throw std::invalid_argument("n_max must lie in 1..12, got " + std::to_string(n_max));
    if (l_max < 0 || l_max > 5)
        throw std::invalid_argument("l_max must lie in 0..5, got " + std::to_string(l_max));
    ReferenceSeries series;
    series.name = ReferenceName::hydrogenic;
    for (int n = 1; n <= n_max; ++n)
        for (int l = 0; l <= std::min(n - 1, l_max); ++l)
            series.entries.emplace_back(n, l);
    return series;
}

/// The canonical reference series. The madelung and ion series carry the 18
/// tabulated orbitals each (ending at 6d and 7s respectively); orbitals past
/// that point are deliberately not extrapolated.
inline const ReferenceSeries& reference_series(ReferenceName name) {
    static const ReferenceSeries madelung = [] {
        ReferenceSeries s;
        s.name = ReferenceName::madelung;
        s.entries = detail::parse_labels({"1s", "2s", "2p", "3s", "3p", "4s", "3d", "4p", "5s",
                                          "4d", "5p", "6s", "4f", "5d", "6p", "7s", "5f", "6d"});
        s.rare_gas_marks = {1, 3, 5, 8, 11, 15};
        return s;
    }();
    static const ReferenceSeries ion = [] {
        ReferenceSeries s;
        s.name = ReferenceName::ion;
        s.entries = detail::parse_labels({"1s", "2s", "2p", "3s", "3p", "3d", "4s", "4p", "4d",
                                          "5s", "5p", "4f", "5d", "6s", "6p", "5f", "6d", "7s"});
        return s;
    }();
    static const ReferenceSeries hydrogenic = hydrogenic_series(7, 3);

    switch (name) {
    case ReferenceName::madelung: return madelung;
    case ReferenceName::ion: return ion;
    case ReferenceName::hydrogenic: return hydrogenic;
    }
    throw std::logic_error("unreachable reference name");
}

/// The orbital universe of the tabulated series (identical for madelung and
/// ion): everything from 1s up to 7s/6d.
inline const std::vector<Orbital>& tabulated_orbitals() {
    static const std::vector<Orbital> orbitals = [] {
        auto v = reference_series(ReferenceName::ion).entries;
        std::sort(v.begin(), v.end());
        return v;
    }();
    return orbitals;
}

/// How a generated sequence relates to a reference series, after restricting
/// the sequence to the reference's orbital set. An inversion is a pair
/// ordered opposite to the reference beyond tie tolerance; its deviation is
/// the symmetric relative difference of the two key values in percent.
struct ComparisonReport {
    ReferenceName reference = ReferenceName::madelung;
    std::size_t matched_prefix_len = 0;
    bool exact_match = false;

    struct Inversion {
        Orbital first;  // earlier in the reference
        Orbital second; // earlier in the generated sequence
        double deviation_percent = 0.0;
    };
    std::vector<Inversion> inversions;
};

inline ComparisonReport compare(const OrbitalSequence& seq, const ReferenceSeries& ref) {
    for (const Orbital& o : ref.entries)
        if (!seq.position(o))
            throw std::invalid_argument("sequence lacks reference orbital " + o.label());

    ComparisonReport report;
    report.reference = ref.name;

    std::vector<EnergyKey> restricted;
    for (const EnergyKey& key : seq.entries)
        if (ref.contains(key.orbital))
            restricted.push_back(key);

    std::size_t prefix = 0;
    while (prefix < ref.entries.size() && restricted[prefix].orbital == ref.entries[prefix])
        ++prefix;
    report.matched_prefix_len = prefix;
    report.exact_match = prefix == ref.entries.size();

    auto key_of = [&](const Orbital& o) {
        return seq.entries[*seq.position(o)].value;
    };
    for (std::size_t i = 0; i < ref.entries.size(); ++i) {
        for (std::size_t j = i + 1; j < ref.entries.size(); ++j) {
            const double va = key_of(ref.entries[i]);
            const double vb = key_of(ref.entries[j]);
            if (va > vb && !keys_tie(va, vb)) {
                const double deviation = 100.0 * std::fabs(va - vb) / ((va + vb) / 2.0);
                report.inversions.push_back({ref.entries[i], ref.entries[j], deviation});
            }
        }
    }
    return report;
}

/// Renders "1s < 2s = 2p < ..." with "=" joining tied entries.
inline std::string render_sequence(const OrbitalSequence& seq) {
    std::string out;
    for (const auto& group : seq.tie_groups) {
        for (std::size_t k = 0; k < group.size(); ++k) {
            if (!out.empty())
                out += k == 0 ? " < " : " = ";
            out += seq.entries[group[k]].orbital.label();
        }
    }
    return out;
}

/// Renders a reference series with "<<" at its rare-gas marks.
inline std::string render_series(const ReferenceSeries& series) {
    std::string out;
    for (std::size_t i = 0; i < series.entries.size(); ++i) {
        if (i > 0)
            out += series.rare_gas_marks.count(i) ? " << " : " < ";
        out += series.entries[i].label();
    }
    return out;
}

} // namespace qaufbau
