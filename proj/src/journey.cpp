#include "transit_hl/journey.hpp"

#include <sstream>

namespace transit_hl {

std::size_t Journey::num_trips() const {
    std::size_t n = 0;
    for (const Leg &leg : legs) n += std::holds_alternative<RideLeg>(leg);
    return n;
}

Time Journey::walk_time() const {
    Time w = 0;
    for (const Leg &leg : legs) {
        if (auto *walk = std::get_if<WalkLeg>(&leg)) w += walk->duration;
    }
    return w;
}

std::string check_journey(const Journey &j, const Timetable &tt, StopId s, StopId t,
                          const std::function<Time(StopId, StopId)> &walk_distance) {
    std::ostringstream err;
    StopId at = s;
    Time now = j.departure;
    bool moved = false;
    for (std::size_t i = 0; i < j.legs.size(); ++i) {
        if (auto *ride = std::get_if<RideLeg>(&j.legs[i])) {
            if (ride->from != at) {
                err << "leg " << i << " boards at " << ride->from << " but journey is at " << at;
                return err.str();
            }
            if (ride->trip >= tt.num_trips()) return "unknown trip";
            const Trip &trip = tt.trip(ride->trip);
            const Route &route = tt.route(trip.route);
            if (ride->board_index >= ride->alight_index || ride->alight_index >= route.stops.size() ||
                route.stops[ride->board_index] != ride->from ||
                route.stops[ride->alight_index] != ride->to) {
                err << "leg " << i << " does not match trip " << ride->trip;
                return err.str();
            }
            if (trip.events[ride->board_index].dep != ride->dep ||
                trip.events[ride->alight_index].arr != ride->arr) {
                err << "leg " << i << " times differ from the timetable";
                return err.str();
            }
            Time ready = now + (moved ? tt.stop(at).min_transfer_time : 0);
            if (ride->dep < ready) {
                err << "leg " << i << " departs at " << ride->dep << " before ready time " << ready;
                return err.str();
            }
            now = ride->arr;
            at = ride->to;
        } else {
            const auto &walk = std::get<WalkLeg>(j.legs[i]);
            if (walk.from != at) {
                err << "leg " << i << " walks from " << walk.from << " but journey is at " << at;
                return err.str();
            }
            if (walk.start < now) {
                err << "leg " << i << " starts walking before arriving";
                return err.str();
            }
            Time d = walk_distance(walk.from, walk.to);
            if (d != walk.duration) {
                err << "leg " << i << " walks " << walk.duration << " s, distance is " << d;
                return err.str();
            }
            now = walk.start + walk.duration;
            at = walk.to;
        }
        moved = true;
    }
    if (at != t) return "journey ends at " + std::to_string(at);
    if (now != j.arrival) {
        err << "journey reaches the target at " << now << ", reported " << j.arrival;
        return err.str();
    }
    return {};
}

std::vector<VertexId> expand_walk(const WalkGraph &g, const WalkLeg &leg) {
    if (leg.hub == kNone || leg.hub == leg.from || leg.hub == leg.to) {
        return shortest_path(g, leg.from, leg.to);
    }
    auto first = shortest_path(g, leg.from, leg.hub);
    auto second = shortest_path(g, leg.hub, leg.to);
    if (first.empty() || second.empty()) return {};
    first.insert(first.end(), second.begin() + 1, second.end());
    return first;
}

std::string describe(const Journey &j, const Timetable &tt) {
    std::ostringstream out;
    auto name = [&](VertexId v) {
        return v < tt.num_stops() ? tt.stop(v).external_id : "#" + std::to_string(v);
    };
    for (const Leg &leg : j.legs) {
        if (auto *ride = std::get_if<RideLeg>(&leg)) {
            out << "ride " << tt.trip(ride->trip).external_id << " " << name(ride->from) << " "
                << format_time(ride->dep) << " -> " << name(ride->to) << " "
                << format_time(ride->arr) << "\n";
        } else {
            const auto &walk = std::get<WalkLeg>(leg);
            out << "walk " << name(walk.from) << " " << format_time(walk.start) << " -> "
                << name(walk.to) << " " << format_time(walk.start + walk.duration) << " ("
                << walk.duration << " s)\n";
        }
    }
    out << "arrive " << format_time(j.arrival) << "\n";
    return out.str();
}

}  // namespace transit_hl
