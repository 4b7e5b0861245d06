#pragma once

// Round-based earliest-arrival search shared by RAPTOR (explicit transfer
// graph) and HLRaptor (two-hop walking through a hub labeling).

#include <vector>

#include "stamped_array.hpp"
#include "transit_hl/hub_labeling.hpp"
#include "transit_hl/raptor.hpp"

namespace transit_hl::detail {

class RoundEngine {
public:
    // Exactly one of transfers / labeling is non-null.
    RoundEngine(const Timetable &tt, const TransferGraph *transfers, const HubLabeling *labeling);

    EatResult run(StopId s, StopId t, Time tau, const RaptorOptions &options);

private:
    enum class Kind : std::uint8_t { None, Origin, Trip, Walk };

    struct LabelParent {
        Kind kind = Kind::None;
        std::uint8_t round = 0;  // round of the trip label the walk starts from
        StopId from = kNone;
        VertexId hub = kNone;
        Time duration = 0;
    };

    struct TripParent {
        TripId trip = kNone;
        StopId board_stop = kNone;
        std::uint32_t board_index = 0;
        std::uint32_t alight_index = 0;
        Time time = kInfinity;  // label value of this trip arrival
    };

    struct HubParent {
        StopId stop = kNone;
        std::uint8_t round = 0;
        Time dist = 0;
    };

    Time &label(int k, StopId v) { return labels_[static_cast<std::size_t>(k) * n_ + v]; }
    LabelParent &parent(int k, StopId v) { return parents_[static_cast<std::size_t>(k) * n_ + v]; }
    TripParent &trip_parent(int k, StopId v) {
        return trip_parents_[static_cast<std::size_t>(k) * n_ + v];
    }

    void improve(int k, StopId v, Time value, const LabelParent &p);
    void scan_routes(int k, RoundStats &stats);
    // require_trip: a trip arrival at p hidden behind a walk-only label can
    // still end the journey by walking straight to the target.
    void final_walk(int k, StopId p, Time arrival, RoundStats &stats);
    void walk_transfers(int k, RoundStats &stats);
    void walk_hubs(int k, RoundStats &stats);
    Journey reconstruct(int k) const;

    const Timetable &tt_;
    const TransferGraph *transfers_;
    const HubLabeling *hl_;
    std::size_t n_;

    // per query
    StopId s_ = 0, t_ = 0;
    Time tau_ = 0;
    RaptorOptions opt_;
    Time pruning_bound() const { return opt_.target_pruning ? best_[t_] : kInfinity; }

    std::vector<Time> labels_;
    std::vector<LabelParent> parents_;
    std::vector<TripParent> trip_parents_;
    std::vector<Time> best_;
    std::vector<Time> trip_best_;  // best arrival by a trip, rounds >= 1
    std::vector<char> marked_;
    std::vector<StopId> marked_list_;
    std::vector<char> trip_improved_flag_;
    std::vector<StopId> trip_improved_;
    std::vector<std::uint32_t> route_first_;
    std::vector<RouteId> marked_routes_;

    StampedArray<Time> hub_arr_;
    StampedArray<HubParent> hub_parent_;
    StampedArray<Time> to_target_;
    std::vector<char> hub_improved_flag_;
    std::vector<VertexId> improved_hubs_;
};

}  // namespace transit_hl::detail
