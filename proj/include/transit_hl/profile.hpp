#pragma once

#include <compare>
#include <vector>

#include "transit_hl/common.hpp"

namespace transit_hl {

// Departing at `dep` from the source reaches the target at `arr`.
struct ProfileEntry {
    Time dep = 0;
    Time arr = 0;
    auto operator<=>(const ProfileEntry &) const = default;
};

// Profile over a departure interval [from, to]: the Pareto set of journeys
// with at least one trip, sorted by departure, strictly increasing in both
// fields. Entries that walking straight to the target matches or beats
// (arr - dep >= walk_duration) are left out; walking is reported once in
// walk_duration, since it can start at any time.
struct ProfileResult {
    std::vector<ProfileEntry> entries;
    Time walk_duration = kInfinity;
    bool operator==(const ProfileResult &) const = default;
};

// Pareto filter where later departure and earlier arrival are better.
std::vector<ProfileEntry> profile_pareto(std::vector<ProfileEntry> entries);

// Turns Pareto entries over all departures >= from into the profile of
// [from, to]: entries leaving before `from` are dropped, the first entry
// leaving after `to` is moved to `to` (waiting at the source), later ones
// are dropped, and walk-dominated entries are removed.
ProfileResult finish_profile(std::vector<ProfileEntry> entries, Time from, Time to,
                             Time walk_duration);

}  // namespace transit_hl
