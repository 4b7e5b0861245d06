#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "transit_hl/common.hpp"

namespace transit_hl {

struct Stop {
    StopId id = 0;
    std::string external_id;
    std::string name;
    std::optional<double> lat;
    std::optional<double> lon;
    Time min_transfer_time = 0;

    bool has_coordinates() const { return lat.has_value() && lon.has_value(); }
    bool operator==(const Stop &) const = default;
};

struct StopEvent {
    Time arr = 0;
    Time dep = 0;
    bool operator==(const StopEvent &) const = default;
};

struct Trip {
    TripId id = 0;
    RouteId route = 0;
    std::string external_id;
    std::vector<StopEvent> events;  // aligned with the route's stop sequence
    bool operator==(const Trip &) const = default;
};

struct Route {
    RouteId id = 0;
    std::vector<StopId> stops;
    std::vector<TripId> trips;  // non-overtaking order
    bool operator==(const Route &) const = default;
};

struct Connection {
    StopId dep_stop = 0;
    StopId arr_stop = 0;
    Time dep_time = 0;
    Time arr_time = 0;
    TripId trip = 0;
    std::uint32_t index_in_trip = 0;
    bool operator==(const Connection &) const = default;
};

// Explicit stop-to-stop walking link from the input (e.g. GTFS transfers.txt).
struct Footpath {
    StopId from = 0;
    StopId to = 0;
    Time duration = 0;
    bool operator==(const Footpath &) const = default;
};

// Trip as read from input, before route grouping.
struct RawTrip {
    std::string external_id;
    std::vector<StopId> stops;
    std::vector<StopEvent> events;
};

struct RoutePosition {
    RouteId route;
    std::uint32_t index;
    bool operator==(const RoutePosition &) const = default;
};

struct TimetableOptions {
    // Mirrored timetables carry negated times.
    bool allow_negative_times = false;
    bool operator==(const TimetableOptions &) const = default;
};

class Timetable {
public:
    Timetable() = default;

    // Validates the raw trips, groups them by stop sequence, splits the groups
    // into non-overtaking routes and builds the sorted connection array.
    Timetable(std::vector<Stop> stops, std::vector<RawTrip> trips,
              std::vector<Footpath> footpaths = {},
              TimetableOptions options = {});

    std::size_t num_stops() const { return stops_.size(); }
    std::size_t num_trips() const { return trips_.size(); }
    std::size_t num_routes() const { return routes_.size(); }

    const std::vector<Stop> &stops() const { return stops_; }
    const std::vector<Trip> &trips() const { return trips_; }
    const std::vector<Route> &routes() const { return routes_; }
    const std::vector<Footpath> &footpaths() const { return footpaths_; }

    const Stop &stop(StopId s) const { return stops_[s]; }
    const Trip &trip(TripId t) const { return trips_[t]; }
    const Route &route(RouteId r) const { return routes_[r]; }

    // Connections sorted by (dep_time, arr_time, trip, index_in_trip).
    const std::vector<Connection> &connections() const { return connections_; }

    // Every (route, position) at which a stop is served.
    std::span<const RoutePosition> routes_at(StopId s) const;

    std::optional<StopId> find_stop(std::string_view external_id) const;

    // Index of the first connection with dep_time >= t.
    std::size_t first_connection_at_or_after(Time t) const;
    // Number of connections with dep_time <= t.
    std::size_t connections_up_to(Time t) const;

    // Time-mirrored copy: every trip runs backwards and times are negated,
    // so that a forward search on the result is a backward search here.
    Timetable reversed() const;

    bool operator==(const Timetable &) const = default;

private:
    std::vector<Stop> stops_;
    std::vector<Trip> trips_;
    std::vector<Route> routes_;
    std::vector<Connection> connections_;
    std::vector<Footpath> footpaths_;
    std::vector<std::uint32_t> stop_route_offsets_;
    std::vector<RoutePosition> stop_routes_;
    TimetableOptions options_;
};

// Partitions one group of trips sharing a stop sequence into maximal
// non-overtaking subsets (greedy first fit over trips sorted by first
// departure, then id). Returns trip ids per subset, in route order.
std::vector<std::vector<TripId>> split_routes(std::span<const TripId> group,
                                              std::span<const Trip> trips);

// One connection per consecutive stop pair of every trip, sorted.
std::vector<Connection> build_connections(std::span<const Trip> trips,
                                          std::span<const Route> routes);

// True if `later` never runs earlier than `earlier` at any stop index.
bool does_not_overtake(const Trip &earlier, const Trip &later);

enum class TimetableFormat { GtfsSubset, Native };

struct GtfsOptions {
    // Keep only trips of this service (trips.txt service_id); empty keeps all.
    std::string service_id;
};

Timetable load_timetable(const std::filesystem::path &dir, TimetableFormat format,
                         const GtfsOptions &gtfs = {});
void save_native(const Timetable &tt, const std::filesystem::path &dir);

// "HH:MM:SS" (hours may exceed 23) or plain integer seconds.
Time parse_time(std::string_view text);
std::string format_time(Time t);

}  // namespace transit_hl
