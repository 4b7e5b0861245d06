#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "transit_hl/common.hpp"
#include "transit_hl/hub_labeling.hpp"
#include "transit_hl/timetable.hpp"
#include "transit_hl/walk_graph.hpp"

namespace transit_hl {

struct RideLeg {
    TripId trip = 0;
    StopId from = 0;
    StopId to = 0;
    std::uint32_t board_index = 0;   // positions in the trip's stop sequence
    std::uint32_t alight_index = 0;
    Time dep = 0;
    Time arr = 0;
    bool operator==(const RideLeg &) const = default;
};

struct WalkLeg {
    VertexId from = 0;
    VertexId to = 0;
    Time start = 0;      // time the walk begins
    Time duration = 0;
    VertexId hub = kNone;  // meeting hub when the walk came from a labeling
    bool operator==(const WalkLeg &) const = default;
};

using Leg = std::variant<RideLeg, WalkLeg>;

struct Journey {
    Time departure = 0;  // query time at the source
    Time arrival = 0;
    std::vector<Leg> legs;

    std::size_t num_trips() const;
    Time walk_time() const;
    bool operator==(const Journey &) const = default;
};

// Checks that the legs chain up from s to t, follow the timetable, respect
// minimum transfer times and that every walk lasts exactly d(from, to).
// Returns an empty string when fine, else a description of the problem.
std::string check_journey(const Journey &j, const Timetable &tt, StopId s, StopId t,
                          const std::function<Time(StopId, StopId)> &walk_distance);

// Vertex path of a walking leg: through its hub when known.
std::vector<VertexId> expand_walk(const WalkGraph &g, const WalkLeg &leg);

std::string describe(const Journey &j, const Timetable &tt);

}  // namespace transit_hl
