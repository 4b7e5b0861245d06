#pragma once

#include <memory>

#include "transit_hl/hub_labeling.hpp"
#include "transit_hl/profile.hpp"
#include "transit_hl/raptor.hpp"

namespace transit_hl {

namespace detail {
class RoundEngine;
}

// RAPTOR where each round's footpath phase walks through the hub labeling:
// improved stops push to their out-hubs, improved hubs push to the stops
// listing them as in-hubs. Arrivals equal RAPTOR on the full closure.
EatResult hlraptor_eat(const Timetable &tt, const HubLabeling &hl, StopId s, StopId t, Time tau,
                       const RaptorOptions &options = {});

// Pareto sets over (arrival, trips, walking time) with hub bags.
McResult hlmc_raptor(const Timetable &tt, const HubLabeling &hl, StopId s, StopId t, Time tau,
                     const McOptions &options = {});

struct ProfileOptions {
    int max_rounds = 16;
    bool target_pruning = true;
    bool min_transfer_times = true;
};

// Reusable HLRaptor state for many queries on one timetable. Holds the
// mirrored timetable and labeling used by the backward profile runs.
class HlRaptorRouter {
public:
    HlRaptorRouter(const Timetable &tt, const HubLabeling &hl);
    ~HlRaptorRouter();

    EatResult eat(StopId s, StopId t, Time tau, const RaptorOptions &options = {});
    // Latest departure from s reaching t by `arrival` with at least one trip
    // (kInfinity negated, i.e. -kInfinity, if none).
    Time latest_departure(StopId s, StopId t, Time arrival, const ProfileOptions &options = {});
    ProfileResult profile(StopId s, StopId t, Time from, Time to, const ProfileOptions &options = {});

private:
    const Timetable &tt_;
    const HubLabeling &hl_;
    Timetable reversed_tt_;
    HubLabeling reversed_hl_;
    std::unique_ptr<detail::RoundEngine> forward_;
    std::unique_ptr<detail::RoundEngine> backward_;
};

// Repeats forward HLRaptor from tau and backward HLRaptor from the found
// arrival to get the latest matching departure, then continues one second
// after it.
ProfileResult hlpr_raptor(const Timetable &tt, const HubLabeling &hl, StopId s, StopId t, Time from,
                          Time to, const ProfileOptions &options = {});

}  // namespace transit_hl
