#include "mc_engine.hpp"

#include <algorithm>

namespace transit_hl::detail {

McEngine::McEngine(const Timetable &tt, const TransferGraph *transfers, const HubLabeling *labeling)
    : tt_(tt), transfers_(transfers), hl_(labeling), n_(tt.num_stops()) {
    if ((transfers_ == nullptr) == (hl_ == nullptr)) {
        throw std::logic_error("mc engine needs exactly one kind of footpaths");
    }
    if (transfers_ && transfers_->num_stops() != n_) {
        throw InputError("transfer graph and timetable disagree on the number of stops");
    }
    if (hl_ && hl_->num_stops() != n_) {
        throw InputError("labeling and timetable disagree on the number of stops");
    }
    marked_.assign(n_, 0);
    route_first_.assign(tt_.num_routes(), kNone);
}

bool McEngine::insert(Bag &bag, const Label &label) {
    for (std::uint32_t id : bag) {
        const Label &o = arena_[id];
        if (o.round <= label.round && o.arr <= label.arr && o.walk <= label.walk) return false;
    }
    std::erase_if(bag, [&](std::uint32_t id) {
        Label &o = arena_[id];
        if (o.round == label.round && label.arr <= o.arr && label.walk <= o.walk) {
            o.alive = false;
            return true;
        }
        return false;
    });
    bag.push_back(static_cast<std::uint32_t>(arena_.size()));
    arena_.push_back(label);
    return true;
}

bool McEngine::dominated_at_target(Time arr, Time walk, int round) const {
    if (!opt_.target_pruning) return false;
    for (std::uint32_t id : bags_[t_]) {
        const Label &o = arena_[id];
        if (o.round <= round && o.arr <= arr && o.walk <= walk) return true;
    }
    return false;
}

void McEngine::mark(StopId v) {
    if (!marked_[v]) {
        marked_[v] = 1;
        marked_list_.push_back(v);
    }
}

McResult McEngine::run(StopId s, StopId t, Time tau, const McOptions &options) {
    if (s >= n_ || t >= n_) throw InputError("query stop out of range");
    if (options.max_rounds < 0 || options.max_rounds > 250) {
        throw InputError("max_rounds must lie in [0, 250]");
    }
    s_ = s;
    t_ = t;
    tau_ = tau;
    opt_ = options;
    arena_.clear();
    bags_.assign(n_, {});
    hub_bags_.assign(hl_ ? hl_->num_vertices() : 0, {});
    for (StopId v : marked_list_) marked_[v] = 0;
    marked_list_.clear();

    Label origin{tau, 0, 0, Kind::Origin, true, s, kNone};
    insert(bags_[s], origin);
    mark(s);
    new_trip_labels_ = {0};
    walk(0);
    for (int k = 1; k <= options.max_rounds && !marked_list_.empty(); ++k) {
        for (StopId p : marked_list_) {
            marked_[p] = 0;
            for (const RoutePosition &rp : tt_.routes_at(p)) {
                if (route_first_[rp.route] == kNone) {
                    marked_routes_.push_back(rp.route);
                    route_first_[rp.route] = rp.index;
                } else {
                    route_first_[rp.route] = std::min(route_first_[rp.route], rp.index);
                }
            }
        }
        marked_list_.clear();
        scan_routes(k);
        walk(k);
    }

    McResult result;
    std::vector<std::uint32_t> ids = bags_[t];
    std::sort(ids.begin(), ids.end(), [&](std::uint32_t a, std::uint32_t b) {
        const Label &x = arena_[a], &y = arena_[b];
        return McValue{x.arr, x.round, x.walk} < McValue{y.arr, y.round, y.walk};
    });
    for (std::uint32_t id : ids) {
        const Label &l = arena_[id];
        result.frontier.push_back(McValue{l.arr, l.round, l.walk});
        result.journeys.push_back(reconstruct(id));
    }
    result.round_bags.resize(options.max_rounds + 1);
    for (int k = 0; k <= options.max_rounds; ++k) {
        std::vector<McValue> within;
        for (const McValue &v : result.frontier) {
            if (v.trips <= k) within.push_back(McValue{v.arrival, 0, v.walk});
        }
        for (McValue &v : pareto_filter(std::move(within))) {
            // report the fewest trips achieving this (arrival, walk)
            int trips = k;
            for (const McValue &f : result.frontier) {
                if (f.arrival == v.arrival && f.walk == v.walk) trips = std::min(trips, f.trips);
            }
            result.round_bags[k].push_back(McValue{v.arrival, trips, v.walk});
        }
    }
    return result;
}

void McEngine::scan_routes(int k) {
    std::vector<RouteLabel> route_bag;
    for (RouteId r : marked_routes_) {
        const Route &route = tt_.route(r);
        const std::uint32_t first = route_first_[r];
        route_first_[r] = kNone;
        route_bag.clear();
        for (std::uint32_t i = first; i < route.stops.size(); ++i) {
            const StopId p = route.stops[i];
            for (const RouteLabel &rl : route_bag) {
                const Trip &trip = tt_.trip(route.trips[rl.pos]);
                const Time arr = trip.events[i].arr;
                if (dominated_at_target(arr, rl.walk, k)) continue;
                Label l{arr, rl.walk, static_cast<std::uint8_t>(k), Kind::Trip, true, p, rl.parent,
                        trip.id, rl.board_index, i};
                if (insert(bags_[p], l)) {
                    new_trip_labels_.push_back(static_cast<std::uint32_t>(arena_.size() - 1));
                    mark(p);
                }
            }
            if (i + 1 == route.stops.size()) break;
            const Bag candidates = bags_[p];
            for (std::uint32_t id : candidates) {
                const Label &l = arena_[id];
                if (!l.alive || l.round != k - 1) continue;
                Time ready = l.arr;
                if (opt_.min_transfer_times && l.kind != Kind::Origin) {
                    ready += tt_.stop(p).min_transfer_time;
                }
                auto it = std::partition_point(route.trips.begin(), route.trips.end(), [&](TripId tid) {
                    return tt_.trip(tid).events[i].dep < ready;
                });
                if (it == route.trips.end()) continue;
                RouteLabel rl{static_cast<std::size_t>(it - route.trips.begin()), l.walk, id, i};
                bool dominated = std::any_of(route_bag.begin(), route_bag.end(), [&](const RouteLabel &o) {
                    return o.pos <= rl.pos && o.walk <= rl.walk;
                });
                if (dominated) continue;
                std::erase_if(route_bag, [&](const RouteLabel &o) {
                    return rl.pos <= o.pos && rl.walk <= o.walk;
                });
                route_bag.push_back(rl);
            }
        }
    }
    marked_routes_.clear();
}

void McEngine::walk(int k) {
    const auto round = static_cast<std::uint8_t>(k);
    std::vector<std::uint32_t> sources;
    for (std::uint32_t id : new_trip_labels_) {
        if (arena_[id].alive) sources.push_back(id);
    }
    new_trip_labels_.clear();
    if (transfers_) {
        for (std::uint32_t id : sources) {
            const Label from = arena_[id];
            for (const Transfer &tr : transfers_->from(from.at)) {
                const Time arr = from.arr + tr.duration, w = from.walk + tr.duration;
                if (dominated_at_target(arr, w, k)) break;
                Label l{arr, w, round, Kind::Walk, true, tr.to, id};
                l.duration = tr.duration;
                if (insert(bags_[tr.to], l)) mark(tr.to);
            }
        }
        return;
    }
    std::vector<std::uint32_t> hub_labels;
    for (std::uint32_t id : sources) {
        const Label from = arena_[id];
        for (const HubEntry &e : hl_->out(from.at)) {
            const Time arr = from.arr + e.dist, w = from.walk + e.dist;
            if (dominated_at_target(arr, w, k)) break;
            Label l{arr, w, round, Kind::Hub, true, e.node, id};
            l.hub = e.node;
            l.duration = e.dist;
            if (insert(hub_bags_[e.node], l)) {
                hub_labels.push_back(static_cast<std::uint32_t>(arena_.size() - 1));
            }
        }
    }
    for (std::uint32_t hid : hub_labels) {
        const Label via = arena_[hid];
        if (!via.alive) continue;
        for (const HubEntry &e : hl_->in_inv(via.hub)) {
            const Time arr = via.arr + e.dist, w = via.walk + e.dist;
            if (dominated_at_target(arr, w, k)) break;
            if (e.node >= n_) continue;
            Label l{arr, w, round, Kind::Walk, true, e.node, via.parent};
            l.hub = via.hub;
            l.duration = via.duration + e.dist;
            if (insert(bags_[e.node], l)) mark(e.node);
        }
    }
}

Journey McEngine::reconstruct(std::uint32_t id) const {
    Journey j;
    j.departure = tau_;
    j.arrival = arena_[id].arr;
    std::vector<Leg> legs;
    while (arena_[id].kind != Kind::Origin) {
        const Label &l = arena_[id];
        const Label &from = arena_[l.parent];
        if (l.kind == Kind::Walk) {
            legs.push_back(WalkLeg{from.at, l.at, from.arr, l.duration, l.hub});
        } else {
            const Trip &trip = tt_.trip(l.trip);
            legs.push_back(RideLeg{l.trip, from.at, l.at, l.board_index, l.alight_index,
                                   trip.events[l.board_index].dep, trip.events[l.alight_index].arr});
        }
        id = l.parent;
    }
    j.legs.assign(legs.rbegin(), legs.rend());
    return j;
}

}  // namespace transit_hl::detail
