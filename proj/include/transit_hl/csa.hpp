#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "transit_hl/hub_labeling.hpp"
#include "transit_hl/journey.hpp"
#include "transit_hl/profile.hpp"
#include "transit_hl/timetable.hpp"
#include "transit_hl/walk_graph.hpp"

namespace transit_hl {

struct CsaOptions {
    // Skip hub-list entries that cannot beat the best known target arrival.
    bool target_pruning = true;
    // Do not scan in-hubs of the departure stop once the trip is boarded.
    bool boarded_skip = true;
    // Stop an in-hub scan when the walk from the hub alone exceeds the time
    // elapsed since the query time.
    bool local_pruning = true;
    // Stop at the first connection leaving after the best target arrival.
    bool stop_early = true;
    bool min_transfer_times = true;
    bool build_journey = true;
};

struct CsaStats {
    std::size_t connections_scanned = 0;
    std::size_t hub_entries_scanned = 0;
};

struct CsaResult {
    Time arrival = kInfinity;
    std::optional<Journey> journey;
    CsaStats stats;
    bool reachable() const { return transit_hl::reachable(arrival); }
};

CsaResult csa_eat(const Timetable &tt, const TransferGraph &transfers, StopId s, StopId t, Time tau,
                  const CsaOptions &options = {});

CsaResult hlcsa_eat(const Timetable &tt, const HubLabeling &hl, StopId s, StopId t, Time tau,
                    const CsaOptions &options = {});

// Pareto set of (departure here, arrival at the target) pairs, sorted by
// departure; both fields strictly increase.
class ProfileBag {
public:
    // False if an entry leaving no earlier and arriving no later exists.
    bool insert(ProfileEntry e);
    // Earliest target arrival when leaving at or after `time`.
    Time query(Time time) const;
    const std::vector<ProfileEntry> &entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    void clear() { entries_.clear(); }

private:
    std::vector<ProfileEntry> entries_;
};

struct CsaProfileOptions {
    bool min_transfer_times = true;
    // Start the backward scan at the earliest arrival from `to` instead of
    // the last connection.
    bool bound_scan = true;
};

// Scans connections by decreasing departure, keeping per trip the best
// target arrival and per hub a bag of (departure from the hub, arrival).
ProfileResult hlpr_csa(const Timetable &tt, const HubLabeling &hl, StopId s, StopId t, Time from,
                       Time to, const CsaProfileOptions &options = {});

namespace detail {
class CsaEngine;
}

// Reusable scan state for many queries on one timetable.
class HlCsaRouter {
public:
    HlCsaRouter(const Timetable &tt, const HubLabeling &hl);
    ~HlCsaRouter();
    CsaResult eat(StopId s, StopId t, Time tau, const CsaOptions &options = {});
    ProfileResult profile(StopId s, StopId t, Time from, Time to,
                          const CsaProfileOptions &options = {});

private:
    const Timetable &tt_;
    const HubLabeling &hl_;
    std::unique_ptr<detail::CsaEngine> engine_;
};

}  // namespace transit_hl
