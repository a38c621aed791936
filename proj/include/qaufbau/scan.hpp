#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "deformation.hpp"
#include "orbital.hpp"
#include "ordering.hpp"
#include "spectrum.hpp"

namespace qaufbau {

/// A deformation value q_star at which two orbitals exchange order, found
/// by bisecting the key difference. bracket is the final enclosing bracket
/// (the difference still changes sign across it); residual is the absolute
/// key difference at q_star.
struct CrossingEvent {
    Orbital first;
    Orbital second;
    double q_star = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double residual = 0.0;
};

/// Locates a root of eps_q(a) - eps_q(b) inside (q_lo, q_hi) by bisection,
/// to bracket width 1e-13. Returns nothing when the difference does not
/// change sign strictly; an endpoint degeneracy (for instance an ns/np pair
/// with 9/5 as an endpoint) is not a crossing. If several roots lie inside
/// the bracket, one of them is returned.
inline std::optional<CrossingEvent> find_crossing(Orbital a, Orbital b, double q_lo, double q_hi) {
    if (!(q_lo > 0.0) || !(q_lo < q_hi))
        throw std::invalid_argument("invalid crossing bracket [" + std::to_string(q_lo) + ", " +
                                    std::to_string(q_hi) + "]");
    auto diff = [&](double q) {
        const double d = epsilon_key(a, Deformation(q)).value - epsilon_key(b, Deformation(q)).value;
        if (!std::isfinite(d))
            throw std::domain_error("non-finite key difference at q = " + std::to_string(q));
        return d;
    };

    double lo = q_lo, hi = q_hi;
    double f_lo = diff(lo), f_hi = diff(hi);
    if (f_lo == 0.0 || f_hi == 0.0 || (f_lo < 0.0) == (f_hi < 0.0))
        return std::nullopt;

    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break; // bracket at floating-point resolution
        const double f_mid = diff(mid);
        if (f_mid == 0.0) {
            lo = std::nextafter(mid, lo);
            hi = std::nextafter(mid, hi);
            break;
        }
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    CrossingEvent event;
    event.first = a;
    event.second = b;
    event.q_star = 0.5 * (lo + hi);
    event.bracket_lo = lo;
    event.bracket_hi = hi;
    event.residual = std::fabs(diff(event.q_star));
    return event;
}

enum class RegimeLabel { madelung_like, ion_like, hydrogenlike, inverted };

inline std::string to_string(RegimeLabel label) {
    switch (label) {
    case RegimeLabel::madelung_like: return "madelung-like";
    case RegimeLabel::ion_like: return "ion-like";
    case RegimeLabel::hydrogenlike: return "hydrogenlike";
    case RegimeLabel::inverted: return "inverted";
    }
    throw std::logic_error("unreachable regime label");
}

enum class PhysicalCase { neutral_atoms, positive_ions, highly_ionized };

inline std::string to_string(PhysicalCase c) {
    switch (c) {
    case PhysicalCase::neutral_atoms: return "neutral";
    case PhysicalCase::positive_ions: return "positive-ions";
    case PhysicalCase::highly_ionized: return "highly-ionized";
    }
    throw std::logic_error("unreachable physical case");
}

/// Deformation values recommended per physical situation: q = 0.85 for
/// neutral atoms, the midpoint 1.225 of the ion window for ionization
/// degrees 1 < N < 7, and q = 1.7 for highly ionized atoms.
inline const std::map<PhysicalCase, double>& recommended_q() {
    static const std::map<PhysicalCase, double> table = {
        {PhysicalCase::neutral_atoms, 0.85},
        {PhysicalCase::positive_ions, 1.225},
        {PhysicalCase::highly_ionized, 1.7},
    };
    return table;
}

/// True when, in the given sequence, every orbital of shell n sits before
/// every orbital of shell n+1 (tie groups resolve lower n first).
inline bool shell_grouping_holds(const OrbitalSequence& seq) {
    std::map<int, std::pair<std::size_t, std::size_t>> extent; // n -> (min pos, max pos)
    for (std::size_t i = 0; i < seq.entries.size(); ++i) {
        const int n = seq.entries[i].orbital.n;
        auto it = extent.find(n);
        if (it == extent.end())
            extent.emplace(n, std::make_pair(i, i));
        else {
            it->second.first = std::min(it->second.first, i);
            it->second.second = std::max(it->second.second, i);
        }
    }
    std::size_t previous_max = 0;
    bool first = true;
    for (const auto& [n, minmax] : extent) {
        if (!first && minmax.first < previous_max)
            return false;
        previous_max = minmax.second;
        first = false;
    }
    return true;
}

namespace detail {

inline constexpr int regime_n_max = 7;
inline constexpr int regime_l_max = 3;

} // namespace detail

/// Labels one deformation value over the n <= 7, l <= 3 universe:
///   ion-like        exact match with the ion series
///   hydrogenlike    alpha >= 0 and shells stay grouped by n
///   madelung-like   no inversion against the madelung series reaches 8%
///   inverted        alpha < 0 and some orbital drops below a lower shell
/// Values matching none of these stay unlabeled.
inline std::optional<RegimeLabel> classify_point(Deformation d) {
    const OrbitalSequence seq = generate_sequence(d, detail::regime_n_max, detail::regime_l_max);
    if (alpha(d) < 0.0)
        return shell_grouping_holds(seq) ? std::nullopt
                                         : std::optional<RegimeLabel>(RegimeLabel::inverted);
    if (compare(seq, reference_series(ReferenceName::ion)).exact_match)
        return RegimeLabel::ion_like;
    if (shell_grouping_holds(seq))
        return RegimeLabel::hydrogenlike;
    const ComparisonReport report = compare(seq, reference_series(ReferenceName::madelung));
    const bool madelung_like =
        std::all_of(report.inversions.begin(), report.inversions.end(),
                    [](const ComparisonReport::Inversion& inv) { return inv.deviation_percent < 8.0; });
    if (madelung_like)
        return RegimeLabel::madelung_like;
    return std::nullopt;
}

/// One labeled q-interval with a witness comparison taken at witness_q
/// against the series that defines the label (hydrogenic for both the
/// hydrogenlike and inverted labels).
struct RegimeInterval {
    double q_lo = 0.0;
    double q_hi = 0.0;
    RegimeLabel label = RegimeLabel::madelung_like;
    double witness_q = 0.0;
    ComparisonReport witness;
};

struct RegimeProfile {
    double q_lo = 0.0;
    double q_hi = 0.0;
    double step = 0.0;
    std::vector<RegimeInterval> intervals;
    std::vector<CrossingEvent> crossings;
    std::map<PhysicalCase, double> recommended = recommended_q();
};

namespace detail {

inline ReferenceName witness_reference(RegimeLabel label) {
    switch (label) {
    case RegimeLabel::madelung_like: return ReferenceName::madelung;
    case RegimeLabel::ion_like: return ReferenceName::ion;
    case RegimeLabel::hydrogenlike:
    case RegimeLabel::inverted: return ReferenceName::hydrogenic;
    }
    throw std::logic_error("unreachable regime label");
}

/// Bisects the boundary between differently labeled neighbours down to a
/// 1e-9 wide bracket and returns its midpoint.
inline double refine_label_boundary(double q_left, double q_right,
                                    const std::optional<RegimeLabel>& left_label) {
    double lo = q_left, hi = q_right;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (classify_point(Deformation(mid)) == left_label)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// Sweeps [q_lo, q_hi] on a uniform grid, labels every grid point, merges
/// runs of equal labels into intervals, sharpens each interval boundary by
/// bisection, and records every tabulated-orbital crossing found inside the
/// boundary cells.
inline RegimeProfile classify_regimes(double q_lo, double q_hi, double step) {
    if (!(q_lo > 0.0) || !(q_lo < q_hi) || !(q_hi <= 2.0))
        throw std::invalid_argument("scan range must satisfy 0 < q_lo < q_hi <= 2.0");
    if (!(step > 0.0) || !(step <= 0.05))
        throw std::invalid_argument("scan step must satisfy 0 < step <= 0.05");

    RegimeProfile profile;
    profile.q_lo = q_lo;
    profile.q_hi = q_hi;
    profile.step = step;

    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double q = q_lo + i * step;
        if (q >= q_hi - 1e-12) {
            grid.push_back(q_hi);
            break;
        }
        grid.push_back(q);
    }

    std::vector<std::optional<RegimeLabel>> labels;
    labels.reserve(grid.size());
    for (double q : grid)
        labels.push_back(classify_point(Deformation(q)));

    // Merge equal-label runs; remember the grid extent of each run.
    struct Run {
        std::size_t begin; // grid index of first point
        std::size_t end;   // grid index of last point
        std::optional<RegimeLabel> label;
        double lo;
        double hi;
    };
    std::vector<Run> runs;
    for (std::size_t i = 0; i < grid.size();) {
        std::size_t j = i;
        while (j + 1 < grid.size() && labels[j + 1] == labels[i])
            ++j;
        runs.push_back({i, j, labels[i], grid[i], grid[j]});
        i = j + 1;
    }

    // Sharpen run boundaries and collect the crossings that drive them.
    for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
        const double cell_lo = grid[runs[r].end];
        const double cell_hi = grid[runs[r + 1].begin];
        const double boundary = detail::refine_label_boundary(cell_lo, cell_hi, runs[r].label);
        runs[r].hi = boundary;
        runs[r + 1].lo = boundary;

        const Deformation left(cell_lo), right(cell_hi);
        const auto& universe = tabulated_orbitals();
        for (std::size_t ia = 0; ia < universe.size(); ++ia) {
            for (std::size_t ib = ia + 1; ib < universe.size(); ++ib) {
                const double d_left = epsilon_key(universe[ia], left).value -
                                      epsilon_key(universe[ib], left).value;
                const double d_right = epsilon_key(universe[ia], right).value -
                                       epsilon_key(universe[ib], right).value;
                if (d_left == 0.0 || d_right == 0.0 || (d_left < 0.0) == (d_right < 0.0))
                    continue;
                if (auto event = find_crossing(universe[ia], universe[ib], cell_lo, cell_hi))
                    profile.crossings.push_back(*event);
            }
        }
    }
    std::sort(profile.crossings.begin(), profile.crossings.end(),
              [](const CrossingEvent& a, const CrossingEvent& b) {
                  if (a.q_star != b.q_star)
                      return a.q_star < b.q_star;
                  if (a.first != b.first)
                      return a.first < b.first;
                  return a.second < b.second;
              });

    for (const Run& run : runs) {
        if (!run.label)
            continue;
        RegimeInterval interval;
        interval.q_lo = run.lo;
        interval.q_hi = run.hi;
        interval.label = *run.label;
        interval.witness_q = grid[run.begin + (run.end - run.begin) / 2];
        const OrbitalSequence seq =
            generate_sequence(Deformation(interval.witness_q), detail::regime_n_max, detail::regime_l_max);
        interval.witness = compare(seq, reference_series(detail::witness_reference(*run.label)));
        profile.intervals.push_back(std::move(interval));
    }
    return profile;
}

} // namespace qaufbau
