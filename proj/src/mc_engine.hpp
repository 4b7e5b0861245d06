#pragma once

// Multi-criteria round-based search over (arrival, trips, walking time),
// shared by McRAPTOR and HLmcRaptor.

#include <vector>

#include "transit_hl/hub_labeling.hpp"
#include "transit_hl/raptor.hpp"

namespace transit_hl::detail {

class McEngine {
public:
    McEngine(const Timetable &tt, const TransferGraph *transfers, const HubLabeling *labeling);

    McResult run(StopId s, StopId t, Time tau, const McOptions &options);

private:
    enum class Kind : std::uint8_t { Origin, Trip, Walk, Hub };

    struct Label {
        Time arr;
        Time walk;
        std::uint8_t round;
        Kind kind;
        bool alive = true;
        StopId at;              // stop, or hub vertex for Kind::Hub
        std::uint32_t parent;   // boarding label (Trip), trip label (Walk, Hub)
        TripId trip = kNone;
        std::uint32_t board_index = 0;
        std::uint32_t alight_index = 0;
        VertexId hub = kNone;
        Time duration = 0;
    };

    struct RouteLabel {
        std::size_t pos;  // trip index within the route
        Time walk;
        std::uint32_t parent;
        std::uint32_t board_index;
    };

    using Bag = std::vector<std::uint32_t>;

    // Inserts unless a label of the same or an earlier round is at least
    // as good; evicts same-round labels the new one dominates.
    bool insert(Bag &bag, const Label &label);
    bool dominated_at_target(Time arr, Time walk, int round) const;
    void mark(StopId v);
    void scan_routes(int k);
    void walk(int k);
    Journey reconstruct(std::uint32_t id) const;

    const Timetable &tt_;
    const TransferGraph *transfers_;
    const HubLabeling *hl_;
    std::size_t n_;

    StopId s_ = 0, t_ = 0;
    Time tau_ = 0;
    McOptions opt_;

    std::vector<Label> arena_;
    std::vector<Bag> bags_;
    std::vector<Bag> hub_bags_;
    std::vector<char> marked_;
    std::vector<StopId> marked_list_;
    std::vector<std::uint32_t> new_trip_labels_;
    std::vector<std::uint32_t> route_first_;
    std::vector<RouteId> marked_routes_;
};

}  // namespace transit_hl::detail
