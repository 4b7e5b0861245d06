#include "transit_hl/timetable.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <unordered_map>

#include "table_reader.hpp"

namespace transit_hl {

namespace {

void validate_trip(const RawTrip &raw, std::size_t num_stops, bool allow_negative) {
    const std::string who = "trip '" + raw.external_id + "'";
    if (raw.stops.empty()) throw InputError(who + " has no stop events");
    if (raw.stops.size() != raw.events.size()) {
        throw InputError(who + ": stop and event counts differ");
    }
    for (std::size_t i = 0; i < raw.stops.size(); ++i) {
        if (raw.stops[i] >= num_stops) {
            throw DanglingReferenceError(who + " references unknown stop index " +
                                         std::to_string(raw.stops[i]));
        }
        const StopEvent &e = raw.events[i];
        if (!allow_negative && (e.arr < 0 || e.dep < 0)) {
            throw InvalidTimeError(who + ": negative time at stop index " + std::to_string(i));
        }
        if (e.arr > e.dep) {
            throw InvalidTimeError(who + ": departs before arriving at stop index " +
                                   std::to_string(i));
        }
        if (i + 1 < raw.events.size() && e.dep > raw.events[i + 1].arr) {
            throw InvalidTimeError(who + ": decreasing times between stop index " +
                                   std::to_string(i) + " and " + std::to_string(i + 1));
        }
    }
}

}  // namespace

bool does_not_overtake(const Trip &earlier, const Trip &later) {
    for (std::size_t i = 0; i < earlier.events.size(); ++i) {
        if (later.events[i].arr < earlier.events[i].arr ||
            later.events[i].dep < earlier.events[i].dep) {
            return false;
        }
    }
    return true;
}

std::vector<std::vector<TripId>> split_routes(std::span<const TripId> group,
                                              std::span<const Trip> trips) {
    std::vector<TripId> order(group.begin(), group.end());
    std::sort(order.begin(), order.end(), [&](TripId a, TripId b) {
        Time da = trips[a].events.front().dep, db = trips[b].events.front().dep;
        return da != db ? da < db : a < b;
    });
    std::vector<std::vector<TripId>> subsets;
    for (TripId t : order) {
        auto fit = std::find_if(subsets.begin(), subsets.end(), [&](const auto &sub) {
            return does_not_overtake(trips[sub.back()], trips[t]);
        });
        if (fit == subsets.end()) {
            subsets.push_back({t});
        } else {
            fit->push_back(t);
        }
    }
    return subsets;
}

std::vector<Connection> build_connections(std::span<const Trip> trips,
                                          std::span<const Route> routes) {
    std::vector<Connection> conns;
    for (const Trip &trip : trips) {
        const auto &stops = routes[trip.route].stops;
        for (std::uint32_t i = 0; i + 1 < trip.events.size(); ++i) {
            conns.push_back(Connection{stops[i], stops[i + 1], trip.events[i].dep,
                                       trip.events[i + 1].arr, trip.id, i});
        }
    }
    std::sort(conns.begin(), conns.end(), [](const Connection &a, const Connection &b) {
        if (a.dep_time != b.dep_time) return a.dep_time < b.dep_time;
        if (a.arr_time != b.arr_time) return a.arr_time < b.arr_time;
        if (a.trip != b.trip) return a.trip < b.trip;
        return a.index_in_trip < b.index_in_trip;
    });
    return conns;
}

Timetable::Timetable(std::vector<Stop> stops, std::vector<RawTrip> raw_trips,
                     std::vector<Footpath> footpaths, TimetableOptions options)
    : stops_(std::move(stops)), footpaths_(std::move(footpaths)), options_(options) {
    for (std::size_t i = 0; i < stops_.size(); ++i) {
        stops_[i].id = static_cast<StopId>(i);
        if (stops_[i].min_transfer_time < 0) {
            throw InvalidTimeError("stop '" + stops_[i].external_id +
                                   "' has a negative minimum transfer time");
        }
    }
    for (const Footpath &f : footpaths_) {
        if (f.from >= stops_.size() || f.to >= stops_.size()) {
            throw DanglingReferenceError("footpath references unknown stop");
        }
        if (f.duration < 0) throw InvalidTimeError("footpath with negative duration");
    }

    // Group by identical stop sequence, groups ordered by smallest trip id.
    std::map<std::vector<StopId>, std::size_t> group_of;
    std::vector<std::vector<TripId>> groups;
    std::vector<std::vector<StopId>> group_stops;
    trips_.reserve(raw_trips.size());
    for (std::size_t i = 0; i < raw_trips.size(); ++i) {
        RawTrip &raw = raw_trips[i];
        validate_trip(raw, stops_.size(), options_.allow_negative_times);
        auto [it, inserted] = group_of.emplace(raw.stops, groups.size());
        if (inserted) {
            groups.emplace_back();
            group_stops.push_back(raw.stops);
        }
        groups[it->second].push_back(static_cast<TripId>(i));
        trips_.push_back(Trip{static_cast<TripId>(i), 0, std::move(raw.external_id),
                              std::move(raw.events)});
    }

    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (auto &subset : split_routes(groups[g], trips_)) {
            RouteId r = static_cast<RouteId>(routes_.size());
            for (TripId t : subset) trips_[t].route = r;
            routes_.push_back(Route{r, group_stops[g], std::move(subset)});
        }
    }

    std::vector<std::uint32_t> count(stops_.size() + 1, 0);
    for (const Route &r : routes_) {
        for (StopId s : r.stops) ++count[s + 1];
    }
    std::partial_sum(count.begin(), count.end(), count.begin());
    stop_route_offsets_ = count;
    stop_routes_.resize(count.back());
    for (const Route &r : routes_) {
        for (std::uint32_t i = 0; i < r.stops.size(); ++i) {
            stop_routes_[count[r.stops[i]]++] = RoutePosition{r.id, i};
        }
    }

    connections_ = build_connections(trips_, routes_);
}

std::span<const RoutePosition> Timetable::routes_at(StopId s) const {
    return std::span<const RoutePosition>(stop_routes_.data() + stop_route_offsets_[s],
                                          stop_route_offsets_[s + 1] - stop_route_offsets_[s]);
}

std::optional<StopId> Timetable::find_stop(std::string_view external_id) const {
    for (const Stop &s : stops_) {
        if (s.external_id == external_id) return s.id;
    }
    return std::nullopt;
}

std::size_t Timetable::first_connection_at_or_after(Time t) const {
    auto it = std::partition_point(connections_.begin(), connections_.end(),
                                   [t](const Connection &c) { return c.dep_time < t; });
    return static_cast<std::size_t>(it - connections_.begin());
}

std::size_t Timetable::connections_up_to(Time t) const {
    auto it = std::partition_point(connections_.begin(), connections_.end(),
                                   [t](const Connection &c) { return c.dep_time <= t; });
    return static_cast<std::size_t>(it - connections_.begin());
}

Timetable Timetable::reversed() const {
    std::vector<RawTrip> raw;
    raw.reserve(trips_.size());
    for (const Trip &t : trips_) {
        RawTrip r;
        r.external_id = t.external_id;
        const auto &stops = routes_[t.route].stops;
        r.stops.assign(stops.rbegin(), stops.rend());
        for (auto it = t.events.rbegin(); it != t.events.rend(); ++it) {
            r.events.push_back(StopEvent{-it->dep, -it->arr});
        }
        raw.push_back(std::move(r));
    }
    std::vector<Footpath> fps;
    for (const Footpath &f : footpaths_) fps.push_back(Footpath{f.to, f.from, f.duration});
    return Timetable(stops_, std::move(raw), std::move(fps),
                     TimetableOptions{.allow_negative_times = true});
}

Time parse_time(std::string_view text) {
    auto to_int = [&](std::string_view part) {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || p != part.data() + part.size() || part.empty()) {
            throw InputError("invalid time '" + std::string(text) + "'");
        }
        return v;
    };
    std::size_t c1 = text.find(':');
    if (c1 == std::string_view::npos) return to_int(text);
    std::size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw InputError("invalid time '" + std::string(text) + "'");
    std::int64_t h = to_int(text.substr(0, c1));
    std::int64_t m = to_int(text.substr(c1 + 1, c2 - c1 - 1));
    std::int64_t s = to_int(text.substr(c2 + 1));
    if (h < 0 || m < 0 || m > 59 || s < 0 || s > 59) {
        throw InputError("invalid time '" + std::string(text) + "'");
    }
    return h * 3600 + m * 60 + s;
}

std::string format_time(Time t) {
    if (!reachable(t)) return "inf";
    std::string sign = t < 0 ? "-" : "";
    Time a = t < 0 ? -t : t;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%02lld:%02lld:%02lld", sign.c_str(),
                  static_cast<long long>(a / 3600), static_cast<long long>(a / 60 % 60),
                  static_cast<long long>(a % 60));
    return buf;
}

// --- native TSV format ------------------------------------------------------

namespace {

std::string format_coordinate(const std::optional<double> &v) {
    if (!v) return {};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *v);
    return buf;
}

Timetable load_native(const std::filesystem::path &dir) {
    using detail::TableReader;
    std::vector<Stop> stops;
    std::unordered_map<std::string, StopId> stop_index;
    {
        TableReader in(dir / "stops.tsv", '\t');
        auto c_id = in.require_column("stop_id");
        auto c_name = in.column("name");
        auto c_lat = in.column("lat");
        auto c_lon = in.column("lon");
        auto c_mtt = in.column("min_transfer_time");
        while (in.next()) {
            Stop s;
            s.external_id = in.field(c_id);
            s.name = in.field_or_empty(c_name);
            if (auto v = in.field_or_empty(c_lat); !v.empty()) s.lat = detail::parse_double(in, v);
            if (auto v = in.field_or_empty(c_lon); !v.empty()) s.lon = detail::parse_double(in, v);
            if (auto v = in.field_or_empty(c_mtt); !v.empty()) {
                s.min_transfer_time = detail::parse_int(in, v);
                if (s.min_transfer_time < 0) in.fail("negative min_transfer_time");
            }
            if (!stop_index.emplace(s.external_id, static_cast<StopId>(stops.size())).second) {
                in.fail("duplicate stop_id '" + s.external_id + "'");
            }
            stops.push_back(std::move(s));
        }
    }

    struct Row {
        std::int64_t seq;
        StopId stop;
        StopEvent ev;
    };
    std::vector<RawTrip> trips;
    {
        std::unordered_map<std::string, std::size_t> trip_index;
        std::vector<std::vector<Row>> rows;
        TableReader in(dir / "stop_times.tsv", '\t');
        auto c_trip = in.require_column("trip_id");
        auto c_seq = in.require_column("stop_sequence");
        auto c_stop = in.require_column("stop_id");
        auto c_arr = in.require_column("arrival");
        auto c_dep = in.require_column("departure");
        while (in.next()) {
            const std::string &trip = in.field(c_trip);
            auto stop = stop_index.find(in.field(c_stop));
            if (stop == stop_index.end()) {
                throw DanglingReferenceError(in.file() + ":" + std::to_string(in.line()) +
                                             ": unknown stop_id '" + in.field(c_stop) + "'");
            }
            auto [it, inserted] = trip_index.emplace(trip, trips.size());
            if (inserted) {
                trips.push_back(RawTrip{trip, {}, {}});
                rows.emplace_back();
            }
            Time arr = detail::parse_int(in, in.field(c_arr));
            Time dep = detail::parse_int(in, in.field(c_dep));
            if (arr < 0 || dep < 0) {
                throw InvalidTimeError(in.file() + ":" + std::to_string(in.line()) +
                                       ": negative time");
            }
            rows[it->second].push_back(
                Row{detail::parse_int(in, in.field(c_seq)), stop->second, StopEvent{arr, dep}});
        }
        for (std::size_t i = 0; i < trips.size(); ++i) {
            std::stable_sort(rows[i].begin(), rows[i].end(),
                             [](const Row &a, const Row &b) { return a.seq < b.seq; });
            for (const Row &r : rows[i]) {
                trips[i].stops.push_back(r.stop);
                trips[i].events.push_back(r.ev);
            }
        }
    }

    std::vector<Footpath> footpaths;
    if (std::filesystem::exists(dir / "footpaths.tsv")) {
        TableReader in(dir / "footpaths.tsv", '\t');
        auto c_from = in.require_column("from_stop_id");
        auto c_to = in.require_column("to_stop_id");
        auto c_dur = in.require_column("duration");
        while (in.next()) {
            auto from = stop_index.find(in.field(c_from));
            auto to = stop_index.find(in.field(c_to));
            if (from == stop_index.end() || to == stop_index.end()) {
                throw DanglingReferenceError(in.file() + ":" + std::to_string(in.line()) +
                                             ": unknown stop in footpath");
            }
            footpaths.push_back(
                Footpath{from->second, to->second, detail::parse_int(in, in.field(c_dur))});
        }
    }
    return Timetable(std::move(stops), std::move(trips), std::move(footpaths));
}

Timetable load_gtfs(const std::filesystem::path &dir, const GtfsOptions &options) {
    using detail::TableReader;
    std::vector<Stop> stops;
    std::unordered_map<std::string, StopId> stop_index;
    {
        TableReader in(dir / "stops.txt", ',');
        auto c_id = in.require_column("stop_id");
        auto c_name = in.column("stop_name");
        auto c_lat = in.column("stop_lat");
        auto c_lon = in.column("stop_lon");
        while (in.next()) {
            Stop s;
            s.external_id = in.field(c_id);
            s.name = in.field_or_empty(c_name);
            if (auto v = in.field_or_empty(c_lat); !v.empty()) s.lat = detail::parse_double(in, v);
            if (auto v = in.field_or_empty(c_lon); !v.empty()) s.lon = detail::parse_double(in, v);
            if (!stop_index.emplace(s.external_id, static_cast<StopId>(stops.size())).second) {
                in.fail("duplicate stop_id '" + s.external_id + "'");
            }
            stops.push_back(std::move(s));
        }
    }

    std::unordered_map<std::string, std::size_t> trip_index;
    std::vector<std::string> trip_ids;
    std::vector<bool> kept;
    {
        TableReader in(dir / "trips.txt", ',');
        auto c_trip = in.require_column("trip_id");
        auto c_service = in.column("service_id");
        while (in.next()) {
            const std::string &id = in.field(c_trip);
            if (!trip_index.emplace(id, trip_ids.size()).second) {
                in.fail("duplicate trip_id '" + id + "'");
            }
            trip_ids.push_back(id);
            kept.push_back(options.service_id.empty() ||
                           in.field_or_empty(c_service) == options.service_id);
        }
    }

    struct Row {
        std::int64_t seq;
        StopId stop;
        StopEvent ev;
    };
    std::vector<std::vector<Row>> rows(trip_ids.size());
    {
        TableReader in(dir / "stop_times.txt", ',');
        auto c_trip = in.require_column("trip_id");
        auto c_arr = in.require_column("arrival_time");
        auto c_dep = in.require_column("departure_time");
        auto c_stop = in.require_column("stop_id");
        auto c_seq = in.require_column("stop_sequence");
        while (in.next()) {
            auto trip = trip_index.find(in.field(c_trip));
            if (trip == trip_index.end()) {
                throw DanglingReferenceError(in.file() + ":" + std::to_string(in.line()) +
                                             ": unknown trip_id '" + in.field(c_trip) + "'");
            }
            auto stop = stop_index.find(in.field(c_stop));
            if (stop == stop_index.end()) {
                throw DanglingReferenceError(in.file() + ":" + std::to_string(in.line()) +
                                             ": unknown stop_id '" + in.field(c_stop) + "'");
            }
            if (!kept[trip->second]) continue;
            std::string arr_s = in.field(c_arr), dep_s = in.field(c_dep);
            if (arr_s.empty()) arr_s = dep_s;
            if (dep_s.empty()) dep_s = arr_s;
            if (arr_s.empty()) in.fail("stop time without arrival or departure");
            Time arr = 0, dep = 0;
            try {
                arr = parse_time(arr_s);
                dep = parse_time(dep_s);
            } catch (const InputError &e) {
                in.fail(e.what());
            }
            rows[trip->second].push_back(
                Row{detail::parse_int(in, in.field(c_seq)), stop->second, StopEvent{arr, dep}});
        }
    }
    std::vector<RawTrip> trips;
    for (std::size_t i = 0; i < trip_ids.size(); ++i) {
        if (rows[i].empty()) continue;
        std::stable_sort(rows[i].begin(), rows[i].end(),
                         [](const Row &a, const Row &b) { return a.seq < b.seq; });
        RawTrip t{trip_ids[i], {}, {}};
        for (const Row &r : rows[i]) {
            t.stops.push_back(r.stop);
            t.events.push_back(r.ev);
        }
        trips.push_back(std::move(t));
    }

    std::vector<Footpath> footpaths;
    if (std::filesystem::exists(dir / "transfers.txt")) {
        TableReader in(dir / "transfers.txt", ',');
        auto c_from = in.require_column("from_stop_id");
        auto c_to = in.require_column("to_stop_id");
        auto c_type = in.column("transfer_type");
        auto c_min = in.column("min_transfer_time");
        while (in.next()) {
            auto from = stop_index.find(in.field(c_from));
            auto to = stop_index.find(in.field(c_to));
            if (from == stop_index.end() || to == stop_index.end()) {
                throw DanglingReferenceError(in.file() + ":" + std::to_string(in.line()) +
                                             ": unknown stop in transfer");
            }
            if (in.field_or_empty(c_type) == "3") continue;  // transfer not possible
            std::string m = in.field_or_empty(c_min);
            Time t = m.empty() ? 0 : detail::parse_int(in, m);
            if (t < 0) in.fail("negative min_transfer_time");
            if (from->second == to->second) {
                Stop &s = stops[from->second];
                s.min_transfer_time = std::max(s.min_transfer_time, t);
            } else {
                footpaths.push_back(Footpath{from->second, to->second, std::max<Time>(t, 1)});
            }
        }
    }
    return Timetable(std::move(stops), std::move(trips), std::move(footpaths));
}

}  // namespace

Timetable load_timetable(const std::filesystem::path &dir, TimetableFormat format,
                         const GtfsOptions &gtfs) {
    if (!std::filesystem::is_directory(dir)) {
        throw InputError("not a directory: " + dir.string());
    }
    return format == TimetableFormat::Native ? load_native(dir) : load_gtfs(dir, gtfs);
}

void save_native(const Timetable &tt, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "stops.tsv");
        out << "stop_id\tname\tlat\tlon\tmin_transfer_time\n";
        for (const Stop &s : tt.stops()) {
            out << s.external_id << '\t' << s.name << '\t' << format_coordinate(s.lat) << '\t'
                << format_coordinate(s.lon) << '\t' << s.min_transfer_time << '\n';
        }
        if (!out) throw InputError("cannot write " + (dir / "stops.tsv").string());
    }
    {
        std::ofstream out(dir / "stop_times.tsv");
        out << "trip_id\tstop_sequence\tstop_id\tarrival\tdeparture\n";
        for (const Trip &t : tt.trips()) {
            const auto &stops = tt.route(t.route).stops;
            for (std::size_t i = 0; i < t.events.size(); ++i) {
                out << t.external_id << '\t' << i << '\t' << tt.stop(stops[i]).external_id
                    << '\t' << t.events[i].arr << '\t' << t.events[i].dep << '\n';
            }
        }
        if (!out) throw InputError("cannot write " + (dir / "stop_times.tsv").string());
    }
    std::filesystem::remove(dir / "footpaths.tsv");
    if (!tt.footpaths().empty()) {
        std::ofstream out(dir / "footpaths.tsv");
        out << "from_stop_id\tto_stop_id\tduration\n";
        for (const Footpath &f : tt.footpaths()) {
            out << tt.stop(f.from).external_id << '\t' << tt.stop(f.to).external_id << '\t'
                << f.duration << '\n';
        }
    }
}

}  // namespace transit_hl
