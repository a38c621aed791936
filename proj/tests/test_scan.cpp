#include <doctest.h>

#include <cmath>
#include <optional>
#include <stdexcept>

#include "qaufbau/scan.hpp"

using namespace qaufbau;

namespace {

double key_difference(const Orbital& a, const Orbital& b, double q) {
    return epsilon_key(a, Deformation(q)).value - epsilon_key(b, Deformation(q)).value;
}

const RegimeInterval* find_interval(const RegimeProfile& profile, RegimeLabel label) {
    for (const RegimeInterval& iv : profile.intervals)
        if (iv.label == label)
            return &iv;
    return nullptr;
}

const CrossingEvent* find_event(const RegimeProfile& profile, const char* a, const char* b) {
    for (const CrossingEvent& c : profile.crossings)
        if ((c.first == parse_orbital(a) && c.second == parse_orbital(b)) ||
            (c.first == parse_orbital(b) && c.second == parse_orbital(a)))
            return &c;
    return nullptr;
}

} // namespace

TEST_CASE("crossing finder") {
    SUBCASE("4s/3d cross between 1.11 and 1.12") {
        const auto event = find_crossing(parse_orbital("4s"), parse_orbital("3d"), 1.0, 1.3);
        REQUIRE(event.has_value());
        CHECK(event->q_star > 1.11);
        CHECK(event->q_star < 1.12);
        CHECK(event->residual <= 1e-12);
        CHECK(event->bracket_lo < event->q_star);
        CHECK(event->bracket_hi > event->q_star);
        CHECK(event->bracket_hi - event->bracket_lo <= 1.1e-13);

        // Sign-change certificate just around the root.
        const double below = key_difference(event->first, event->second, event->q_star - 1e-10);
        const double above = key_difference(event->first, event->second, event->q_star + 1e-10);
        CHECK(below * above < 0.0);
    }
    SUBCASE("2s/2p never cross below the degenerate point") {
        CHECK_FALSE(find_crossing(parse_orbital("2s"), parse_orbital("2p"), 0.5, 1.7).has_value());
    }
    SUBCASE("a degenerate endpoint is not a crossing") {
        // At q = 9/5 every ns/np pair is degenerate, not crossed.
        CHECK_FALSE(find_crossing(parse_orbital("2s"), parse_orbital("2p"), 0.5, 1.8).has_value());
    }
    SUBCASE("a bracket straddling 9/5 locates the degeneracy") {
        const auto event = find_crossing(parse_orbital("2s"), parse_orbital("2p"), 1.79, 1.81);
        REQUIRE(event.has_value());
        CHECK(std::fabs(event->q_star - 1.8) <= 1e-6);
    }
    SUBCASE("invalid brackets rejected") {
        CHECK_THROWS_AS(find_crossing(parse_orbital("4s"), parse_orbital("3d"), -1.0, 1.3),
                        std::invalid_argument);
        CHECK_THROWS_AS(find_crossing(parse_orbital("4s"), parse_orbital("3d"), 1.3, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("point classification anchors") {
    CHECK(classify_point(Deformation(0.85)) == RegimeLabel::madelung_like);
    CHECK(classify_point(Deformation(1.2)) == RegimeLabel::ion_like);
    CHECK(classify_point(Deformation(1.7)) == RegimeLabel::hydrogenlike);
    CHECK(classify_point(Deformation(1.8)) == RegimeLabel::hydrogenlike);
    CHECK(classify_point(Deformation(1.95)) == RegimeLabel::inverted);
    CHECK_FALSE(classify_point(Deformation(1.0)).has_value());
    CHECK_FALSE(classify_point(Deformation(0.5)).has_value());
}

TEST_CASE("regime scanning") {
    SUBCASE("the ion window is one interval") {
        const RegimeProfile profile = classify_regimes(1.15, 1.30, 0.01);
        REQUIRE(profile.intervals.size() == 1);
        CHECK(profile.intervals[0].label == RegimeLabel::ion_like);
        CHECK(profile.intervals[0].witness.exact_match);
    }
    SUBCASE("the hydrogenlike window is one interval") {
        const RegimeProfile profile = classify_regimes(1.6, 1.8, 0.01);
        REQUIRE(profile.intervals.size() == 1);
        CHECK(profile.intervals[0].label == RegimeLabel::hydrogenlike);
    }
    SUBCASE("scanning 1.0..1.3 reports the 4s/3d crossing") {
        const RegimeProfile profile = classify_regimes(1.0, 1.3, 0.01);
        const CrossingEvent* event = find_event(profile, "4s", "3d");
        REQUIRE(event != nullptr);
        CHECK(event->q_star > 1.11);
        CHECK(event->q_star < 1.12);
    }
    SUBCASE("ion interval boundaries coincide with crossings") {
        const RegimeProfile profile = classify_regimes(1.0, 1.5, 0.01);
        const RegimeInterval* ion = find_interval(profile, RegimeLabel::ion_like);
        REQUIRE(ion != nullptr);

        // Discovered window contains the documented 1.15..1.30 range.
        CHECK(ion->q_lo <= 1.15);
        CHECK(ion->q_hi >= 1.30);

        const CrossingEvent* lower = find_event(profile, "4s", "3d");
        REQUIRE(lower != nullptr);
        CHECK(std::fabs(ion->q_lo - lower->q_star) <= 1e-6);

        const CrossingEvent* upper = find_event(profile, "6p", "5f");
        REQUIRE(upper != nullptr);
        CHECK(std::fabs(ion->q_hi - upper->q_star) <= 1e-6);
    }
    SUBCASE("full sweep finds the four regimes in order") {
        const RegimeProfile profile = classify_regimes(0.5, 2.0, 0.01);
        REQUIRE(profile.intervals.size() == 4);
        CHECK(profile.intervals[0].label == RegimeLabel::madelung_like);
        CHECK(profile.intervals[1].label == RegimeLabel::ion_like);
        CHECK(profile.intervals[2].label == RegimeLabel::hydrogenlike);
        CHECK(profile.intervals[3].label == RegimeLabel::inverted);

        // Intervals are disjoint and ascending.
        for (std::size_t i = 0; i + 1 < profile.intervals.size(); ++i)
            CHECK(profile.intervals[i].q_hi <= profile.intervals[i + 1].q_lo);

        // 0.85 madelung-like window, hydrogenlike up to 9/5.
        CHECK(profile.intervals[0].q_lo <= 0.85);
        CHECK(profile.intervals[0].q_hi >= 0.85);
        CHECK(std::fabs(profile.intervals[2].q_hi - 1.8) <= 1e-6);

        // The inverted regime opens where 4f sinks below 3s.
        const CrossingEvent* sink = find_event(profile, "3s", "4f");
        REQUIRE(sink != nullptr);
        CHECK(std::fabs(profile.intervals[3].q_lo - sink->q_star) <= 1e-6);

        // The hydrogenlike regime opens where 4f and 5s exchange order.
        const CrossingEvent* opens = find_event(profile, "4f", "5s");
        REQUIRE(opens != nullptr);
        CHECK(std::fabs(profile.intervals[2].q_lo - opens->q_star) <= 1e-6);
    }
    SUBCASE("profiles are deterministic") {
        const RegimeProfile a = classify_regimes(1.0, 1.5, 0.01);
        const RegimeProfile b = classify_regimes(1.0, 1.5, 0.01);
        REQUIRE(a.intervals.size() == b.intervals.size());
        for (std::size_t i = 0; i < a.intervals.size(); ++i) {
            CHECK(a.intervals[i].q_lo == b.intervals[i].q_lo);
            CHECK(a.intervals[i].q_hi == b.intervals[i].q_hi);
        }
    }
    SUBCASE("range validation") {
        CHECK_THROWS_AS(classify_regimes(1.0, 2.5, 0.01), std::invalid_argument);
        CHECK_THROWS_AS(classify_regimes(2.5, 1.0, 0.01), std::invalid_argument);
        CHECK_THROWS_AS(classify_regimes(-0.5, 1.0, 0.01), std::invalid_argument);
        CHECK_THROWS_AS(classify_regimes(1.0, 1.5, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(classify_regimes(1.0, 1.5, 0.06), std::invalid_argument);
    }
}

TEST_CASE("recommended deformation values") {
    const auto& table = recommended_q();
    CHECK(table.at(PhysicalCase::neutral_atoms) == 0.85);
    CHECK(table.at(PhysicalCase::positive_ions) == 1.225);
    CHECK(table.at(PhysicalCase::highly_ionized) == 1.7);
}
