#include "round_engine.hpp"

#include <algorithm>

namespace transit_hl::detail {

RoundEngine::RoundEngine(const Timetable &tt, const TransferGraph *transfers,
                         const HubLabeling *labeling)
    : tt_(tt), transfers_(transfers), hl_(labeling), n_(tt.num_stops()) {
    if ((transfers_ == nullptr) == (hl_ == nullptr)) {
        throw std::logic_error("round engine needs exactly one kind of footpaths");
    }
    if (transfers_ && transfers_->num_stops() != n_) {
        throw InputError("transfer graph and timetable disagree on the number of stops");
    }
    if (hl_) {
        if (hl_->num_stops() != n_) {
            throw InputError("labeling and timetable disagree on the number of stops");
        }
        hub_arr_.resize(hl_->num_vertices(), kInfinity);
        hub_parent_.resize(hl_->num_vertices(), HubParent{});
        to_target_.resize(hl_->num_vertices(), kInfinity);
        hub_improved_flag_.assign(hl_->num_vertices(), 0);
    }
    best_.assign(n_, kInfinity);
    trip_best_.assign(n_, kInfinity);
    marked_.assign(n_, 0);
    trip_improved_flag_.assign(n_, 0);
    route_first_.assign(tt_.num_routes(), kNone);
}

void RoundEngine::improve(int k, StopId v, Time value, const LabelParent &p) {
    label(k, v) = value;
    best_[v] = value;
    parent(k, v) = p;
    if (!marked_[v]) {
        marked_[v] = 1;
        marked_list_.push_back(v);
    }
}

EatResult RoundEngine::run(StopId s, StopId t, Time tau, const RaptorOptions &options) {
    if (s >= n_ || t >= n_) throw InputError("query stop out of range");
    if (options.max_rounds < 0 || options.max_rounds > 250) {
        throw InputError("max_rounds must lie in [0, 250]");
    }
    s_ = s;
    t_ = t;
    tau_ = tau;
    opt_ = options;
    const int K = options.max_rounds;

    EatResult result;
    result.round_arrivals.assign(K + 1, kInfinity);
    if (options.require_trip && s == t) return result;

    labels_.assign(static_cast<std::size_t>(K + 1) * n_, kInfinity);
    parents_.assign(static_cast<std::size_t>(K + 1) * n_, LabelParent{});
    trip_parents_.resize(static_cast<std::size_t>(K + 1) * n_);
    std::fill(best_.begin(), best_.end(), kInfinity);
    std::fill(trip_best_.begin(), trip_best_.end(), kInfinity);
    for (StopId v : marked_list_) marked_[v] = 0;
    marked_list_.clear();
    if (hl_) {
        hub_arr_.reset();
        hub_parent_.reset();
        to_target_.reset();
        if (options.require_trip) {
            for (const HubEntry &e : hl_->in(t)) to_target_.set(e.node, e.dist);
        }
    }

    improve(0, s, tau, LabelParent{Kind::Origin});
    trip_parent(0, s) = TripParent{kNone, kNone, 0, 0, tau};
    trip_improved_ = {s};
    trip_improved_flag_[s] = 1;

    int last = 0;
    for (int k = 0; k <= K; ++k) {
        RoundStats stats;
        if (k > 0) {
            if (marked_list_.empty()) break;
            std::copy_n(labels_.begin() + static_cast<std::ptrdiff_t>((k - 1) * n_), n_,
                        labels_.begin() + static_cast<std::ptrdiff_t>(k * n_));
            std::copy_n(parents_.begin() + static_cast<std::ptrdiff_t>((k - 1) * n_), n_,
                        parents_.begin() + static_cast<std::ptrdiff_t>(k * n_));
            // routes serving stops marked in the previous round
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
            stats.marked_routes = marked_routes_.size();
            scan_routes(k, stats);
        }
        stats.trip_improved_stops = trip_improved_.size();
        if (transfers_) {
            walk_transfers(k, stats);
        } else {
            walk_hubs(k, stats);
        }
        for (StopId v : trip_improved_) trip_improved_flag_[v] = 0;
        trip_improved_.clear();
        result.rounds.push_back(stats);
        result.round_arrivals[k] = label(k, t);
        last = k;
    }
    for (int k = last + 1; k <= K; ++k) result.round_arrivals[k] = result.round_arrivals[last];
    result.arrival = result.round_arrivals[K];

    if (options.record_all_stops) {
        result.stop_arrivals.resize(K + 1);
        for (int k = 0; k <= K; ++k) {
            int src = std::min(k, last);
            result.stop_arrivals[k].assign(labels_.begin() + static_cast<std::ptrdiff_t>(src * n_),
                                           labels_.begin() + static_cast<std::ptrdiff_t>((src + 1) * n_));
        }
    }
    if (options.build_journey && options.charge == TransferCharge::AtBoarding &&
        result.reachable()) {
        result.journey = reconstruct(last);
    }
    return result;
}

void RoundEngine::scan_routes(int k, RoundStats &stats) {
    const bool charge_boarding = opt_.min_transfer_times && opt_.charge == TransferCharge::AtBoarding;
    const bool charge_alighting =
        opt_.min_transfer_times && opt_.charge == TransferCharge::AtAlighting;
    for (RouteId r : marked_routes_) {
        const Route &route = tt_.route(r);
        const std::uint32_t first = route_first_[r];
        route_first_[r] = kNone;
        const std::size_t len = route.stops.size();
        std::size_t pos = kNone;  // index of the current trip in route.trips
        StopId board_stop = kNone;
        std::uint32_t board_index = 0;
        for (std::uint32_t i = first; i < len; ++i) {
            const StopId p = route.stops[i];
            if (pos != kNone) {
                const Trip &trip = tt_.trip(route.trips[pos]);
                Time cand = trip.events[i].arr;
                if (charge_alighting && p != t_) cand += tt_.stop(p).min_transfer_time;
                if (cand < std::min(best_[p], pruning_bound())) {
                    improve(k, p, cand, LabelParent{Kind::Trip, static_cast<std::uint8_t>(k)});
                    trip_parent(k, p) = TripParent{trip.id, board_stop, board_index, i, cand};
                    trip_best_[p] = cand;
                    if (!trip_improved_flag_[p]) {
                        trip_improved_flag_[p] = 1;
                        trip_improved_.push_back(p);
                    }
                } else if (opt_.require_trip && cand < std::min(trip_best_[p], pruning_bound()) &&
                           p != t_ && p != s_) {
                    // walk-dominated arrival kept for a direct walk to t; journeys
                    // passing through s or t again are skipped in both directions
                    trip_best_[p] = cand;
                    trip_parent(k, p) = TripParent{trip.id, board_stop, board_index, i, cand};
                    final_walk(k, p, cand, stats);
                }
            }
            if (i + 1 == len) break;
            const Time prev = label(k - 1, p);
            if (!reachable(prev)) continue;
            Time ready = prev;
            if (charge_boarding && p != s_) ready += tt_.stop(p).min_transfer_time;
            const std::size_t limit = pos == kNone ? route.trips.size() : pos;
            if (limit == 0) continue;
            // first trip in [0, limit) leaving p at or after ready
            auto begin = route.trips.begin();
            auto it = std::partition_point(begin, begin + static_cast<std::ptrdiff_t>(limit),
                                           [&](TripId id) { return tt_.trip(id).events[i].dep < ready; });
            if (it != begin + static_cast<std::ptrdiff_t>(limit)) {
                pos = static_cast<std::size_t>(it - begin);
                board_stop = p;
                board_index = i;
            }
        }
    }
    marked_routes_.clear();
}

void RoundEngine::final_walk(int k, StopId p, Time arrival, RoundStats &stats) {
    Time best = kInfinity;
    VertexId via = kNone;
    if (transfers_) {
        for (const Transfer &tr : transfers_->from(p)) {
            ++stats.transfers_scanned;
            if (tr.to == t_) {
                best = tr.duration;
                break;
            }
        }
    } else {
        auto hubs = hl_->out(p);
        stats.hub_entries_bound += hubs.size();
        for (const HubEntry &e : hubs) {
            ++stats.hub_entries_scanned;
            if (arrival + e.dist >= best_[t_]) break;
            if (reachable(to_target_[e.node]) && e.dist + to_target_[e.node] < best) {
                best = e.dist + to_target_[e.node];
                via = e.node;
            }
        }
    }
    if (reachable(best) && arrival + best < best_[t_]) {
        improve(k, t_, arrival + best, LabelParent{Kind::Walk, static_cast<std::uint8_t>(k), p, via, best});
    }
}

void RoundEngine::walk_transfers(int k, RoundStats &stats) {
    for (StopId u : trip_improved_) {
        const Time start = trip_parent(k, u).time;
        for (const Transfer &tr : transfers_->from(u)) {
            ++stats.transfers_scanned;
            const Time a = start + tr.duration;
            if (a >= pruning_bound()) break;
            if (opt_.require_trip && k == 0 && tr.to == t_) continue;
            if (a < best_[tr.to]) {
                improve(k, tr.to, a,
                        LabelParent{Kind::Walk, static_cast<std::uint8_t>(k), u, kNone, tr.duration});
            }
        }
    }
}

void RoundEngine::walk_hubs(int k, RoundStats &stats) {
    const bool via_target_hubs = opt_.require_trip && k > 0;
    // out-hubs of stops reached by a trip in this round
    for (StopId u : trip_improved_) {
        const Time start = trip_parent(k, u).time;
        auto hubs = hl_->out(u);
        stats.hub_entries_bound += hubs.size();
        for (const HubEntry &e : hubs) {
            ++stats.hub_entries_scanned;
            const Time a = start + e.dist;
            if (a >= pruning_bound()) break;
            if (via_target_hubs && reachable(to_target_[e.node])) {
                const Time at = a + to_target_[e.node];
                if (at < best_[t_]) {
                    improve(k, t_, at,
                            LabelParent{Kind::Walk, static_cast<std::uint8_t>(k), u, e.node,
                                        e.dist + to_target_[e.node]});
                }
            }
            if (a < hub_arr_[e.node]) {
                hub_arr_.set(e.node, a);
                hub_parent_.set(e.node, HubParent{u, static_cast<std::uint8_t>(k), e.dist});
                if (!hub_improved_flag_[e.node]) {
                    hub_improved_flag_[e.node] = 1;
                    improved_hubs_.push_back(e.node);
                }
            }
        }
    }
    stats.improved_hubs = improved_hubs_.size();
    // stops that list an improved hub among their in-hubs
    for (VertexId h : improved_hubs_) {
        hub_improved_flag_[h] = 0;
        const Time at_hub = hub_arr_[h];
        const HubParent hp = hub_parent_[h];
        auto stops = hl_->in_inv(h);
        stats.hub_entries_bound += stops.size();
        for (const HubEntry &e : stops) {
            ++stats.hub_entries_scanned;
            const Time a = at_hub + e.dist;
            if (a >= pruning_bound()) break;
            if (e.node >= n_) continue;
            if (opt_.require_trip && k == 0 && e.node == t_) continue;
            if (a < best_[e.node]) {
                improve(k, e.node, a, LabelParent{Kind::Walk, hp.round, hp.stop, h, hp.dist + e.dist});
            }
        }
    }
    improved_hubs_.clear();
}

Journey RoundEngine::reconstruct(int k) const {
    Journey j;
    j.departure = tau_;
    j.arrival = labels_[static_cast<std::size_t>(k) * n_ + t_];
    auto lab_parent = [&](int r, StopId v) { return parents_[static_cast<std::size_t>(r) * n_ + v]; };
    auto tp_at = [&](int r, StopId v) { return trip_parents_[static_cast<std::size_t>(r) * n_ + v]; };
    auto ride = [&](const TripParent &tp, StopId to) {
        const Trip &trip = tt_.trip(tp.trip);
        return RideLeg{tp.trip,
                       tp.board_stop,
                       to,
                       tp.board_index,
                       tp.alight_index,
                       trip.events[tp.board_index].dep,
                       trip.events[tp.alight_index].arr};
    };
    std::vector<Leg> legs;
    StopId v = t_;
    LabelParent p = lab_parent(k, v);
    while (p.kind != Kind::Origin) {
        StopId trip_stop = v;
        if (p.kind == Kind::Walk) {
            const TripParent from = tp_at(p.round, p.from);
            legs.push_back(WalkLeg{p.from, v, from.time, p.duration, p.hub});
            trip_stop = p.from;
            if (p.round == 0) break;  // walked from the source
        } else if (p.kind != Kind::Trip) {
            throw std::logic_error("broken parent chain");
        }
        const TripParent tp = tp_at(p.round, trip_stop);
        legs.push_back(ride(tp, trip_stop));
        v = tp.board_stop;
        p = lab_parent(p.round - 1, v);
    }
    j.legs.assign(legs.rbegin(), legs.rend());
    return j;
}

}  // namespace transit_hl::detail
