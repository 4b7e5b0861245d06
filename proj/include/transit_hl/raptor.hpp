#pragma once

#include <optional>
#include <vector>

#include "transit_hl/common.hpp"
#include "transit_hl/journey.hpp"
#include "transit_hl/timetable.hpp"
#include "transit_hl/walk_graph.hpp"

namespace transit_hl {

// Where the minimum transfer time of a stop is paid.
//   AtBoarding: when boarding after arriving by trip or on foot; boarding
//     directly at the source is exempt.
//   AtAlighting: added to trip arrivals at every stop but the target; used
//     by searches on a mirrored timetable, where it reproduces AtBoarding of
//     the original.
enum class TransferCharge { AtBoarding, AtAlighting };

struct RaptorOptions {
    int max_rounds = 16;
    bool target_pruning = true;
    // Only journeys with at least one trip count as reaching the target.
    // Journeys that touch t before their last leg or come back to s are not
    // searched; walking straight from s to t is never slower than those.
    bool require_trip = false;
    TransferCharge charge = TransferCharge::AtBoarding;
    bool min_transfer_times = true;
    // Keep per-round arrival arrays for every stop in the result.
    bool record_all_stops = false;
    bool build_journey = true;
};

struct RoundStats {
    std::size_t marked_routes = 0;
    std::size_t trip_improved_stops = 0;
    std::size_t improved_hubs = 0;
    // Hub-list entries read in this round, and the sum of the list lengths
    // of the stops and hubs whose lists were scanned.
    std::size_t hub_entries_scanned = 0;
    std::size_t hub_entries_bound = 0;
    std::size_t transfers_scanned = 0;
};

struct EatResult {
    Time arrival = kInfinity;
    // round_arrivals[k]: earliest arrival at the target using at most k trips.
    std::vector<Time> round_arrivals;
    // Filled with record_all_stops: stop_arrivals[k][v] likewise for every stop.
    std::vector<std::vector<Time>> stop_arrivals;
    std::optional<Journey> journey;
    std::vector<RoundStats> rounds;

    bool reachable() const { return transit_hl::reachable(arrival); }
};

EatResult raptor_eat(const Timetable &tt, const TransferGraph &transfers, StopId s, StopId t,
                     Time tau, const RaptorOptions &options = {});

// Criteria of a multi-criteria journey.
struct McValue {
    Time arrival = kInfinity;
    int trips = 0;
    Time walk = 0;
    auto operator<=>(const McValue &) const = default;
};

struct McOptions {
    int max_rounds = 16;
    bool target_pruning = true;
    bool min_transfer_times = true;
};

struct McResult {
    // Pareto set over (arrival, trips, walk), sorted.
    std::vector<McValue> frontier;
    std::vector<Journey> journeys;  // aligned with frontier
    // round_bags[k]: Pareto set over (arrival, walk) of journeys with at
    // most k trips, sorted by arrival.
    std::vector<std::vector<McValue>> round_bags;
};

McResult mc_raptor(const Timetable &tt, const TransferGraph &transfers, StopId s, StopId t,
                   Time tau, const McOptions &options = {});

// Keeps the (arrival, trips, walk) Pareto-minimal values, sorted, unique.
std::vector<McValue> pareto_filter(std::vector<McValue> values);

}  // namespace transit_hl
