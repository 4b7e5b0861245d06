#include "transit_hl/csa.hpp"

#include <algorithm>
#include <tuple>

#include "stamped_array.hpp"

namespace transit_hl {

bool ProfileBag::insert(ProfileEntry e) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), e.dep,
                               [](const ProfileEntry &x, Time dep) { return x.dep < dep; });
    if (it != entries_.end() && it->arr <= e.arr) return false;
    // entries leaving no later and arriving no earlier sit right before it
    auto first = it;
    while (first != entries_.begin() && std::prev(first)->arr >= e.arr) --first;
    if (it != entries_.end() && it->dep == e.dep) ++it;  // same departure, later arrival
    it = entries_.erase(first, it);
    entries_.insert(it, e);
    return true;
}

Time ProfileBag::query(Time time) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), time,
                               [](const ProfileEntry &x, Time dep) { return x.dep < dep; });
    return it == entries_.end() ? kInfinity : it->arr;
}

namespace detail {

// Earliest-arrival connection scan with either explicit transfers or a hub
// labeling, plus the profile scan over the labeling.
class CsaEngine {
public:
    CsaEngine(const Timetable &tt, const TransferGraph *transfers, const HubLabeling *hl)
        : tt_(tt), transfers_(transfers), hl_(hl), n_(tt.num_stops()) {
        if (transfers_ && transfers_->num_stops() != n_) {
            throw InputError("transfer graph and timetable disagree on the number of stops");
        }
        if (hl_ && hl_->num_stops() != n_) {
            throw InputError("labeling and timetable disagree on the number of stops");
        }
        stop_arr_.resize(n_, kInfinity);
        stop_parent_.resize(n_, Arrival{});
        boarded_.resize(tt.num_trips(), Boarding{});
        if (hl_) {
            hub_arr_.resize(hl_->num_vertices(), kInfinity);
            hub_parent_.resize(hl_->num_vertices(), Arrival{});
            to_target_.resize(hl_->num_vertices(), kInfinity);
        }
    }

    CsaResult eat(StopId s, StopId t, Time tau, const CsaOptions &options);
    ProfileResult profile(StopId s, StopId t, Time from, Time to, const CsaProfileOptions &options);

private:
    // How a stop (or hub) was reached: by the trip of connection `conn`
    // (kNone: at the source), then optionally on foot from `walk_from`.
    struct Arrival {
        ConnectionId conn = kNone;
        StopId walk_from = kNone;
        VertexId hub = kNone;
        Time walk = 0;
    };

    struct Boarding {
        ConnectionId conn = kNone;  // first connection ridden
        Arrival how;                // how its departure stop was reached
    };

    Time event_time(ConnectionId c) const {
        return c == kNone ? tau_ : tt_.connections()[c].arr_time;
    }
    Journey reconstruct(const Arrival &at_target, Time arrival, StopId t) const;

    const Timetable &tt_;
    const TransferGraph *transfers_;
    const HubLabeling *hl_;
    std::size_t n_;
    Time tau_ = 0;
    StopId s_ = 0;

    StampedArray<Time> stop_arr_;
    StampedArray<Arrival> stop_parent_;
    StampedArray<Boarding> boarded_;
    StampedArray<Time> hub_arr_;
    StampedArray<Arrival> hub_parent_;
    StampedArray<Time> to_target_;

    std::vector<Time> trip_best_;
    std::vector<ProfileBag> hub_bags_;
    std::vector<VertexId> used_bags_;
};

CsaResult CsaEngine::eat(StopId s, StopId t, Time tau, const CsaOptions &opt) {
    if (s >= n_ || t >= n_) throw InputError("query stop out of range");
    CsaResult result;
    tau_ = tau;
    s_ = s;
    stop_arr_.reset();
    stop_parent_.reset();
    boarded_.reset();
    hub_arr_.reset();
    hub_parent_.reset();
    to_target_.reset();

    Time best = kInfinity;
    Arrival target_how;
    auto mtt = [&](StopId u) { return opt.min_transfer_times ? tt_.stop(u).min_transfer_time : 0; };
    auto prune = [&] { return opt.target_pruning ? best : kInfinity; };

    stop_arr_.set(s, tau);
    if (s == t) {
        best = tau;
    }
    if (transfers_) {
        for (const Transfer &tr : transfers_->from(s)) {
            if (tau + tr.duration < stop_arr_[tr.to]) {
                stop_arr_.set(tr.to, tau + tr.duration);
                stop_parent_.set(tr.to, Arrival{kNone, s, kNone, tr.duration});
            }
        }
        if (stop_arr_[t] < best) {
            best = stop_arr_[t];
            target_how = stop_parent_[t];
        }
    } else {
        for (const HubEntry &e : hl_->in(t)) to_target_.set(e.node, e.dist);
        for (const HubEntry &e : hl_->out(s)) {
            ++result.stats.hub_entries_scanned;
            hub_arr_.set(e.node, tau + e.dist);
            hub_parent_.set(e.node, Arrival{kNone, s, kNone, e.dist});
            if (reachable(to_target_[e.node]) && tau + e.dist + to_target_[e.node] < best) {
                best = tau + e.dist + to_target_[e.node];
                target_how = Arrival{kNone, s, e.node, e.dist + to_target_[e.node]};
            }
        }
    }

    const auto &conns = tt_.connections();
    for (std::size_t i = tt_.first_connection_at_or_after(tau); i < conns.size(); ++i) {
        const Connection &c = conns[i];
        if (opt.stop_early && c.dep_time >= best) break;
        ++result.stats.connections_scanned;
        const bool was_boarded = boarded_[c.trip].conn != kNone;
        if (!was_boarded || !opt.boarded_skip) {
            std::optional<Arrival> how;
            const StopId u = c.dep_stop;
            const Time ready = u == s ? stop_arr_[u] : stop_arr_[u] + mtt(u);
            if (reachable(stop_arr_[u]) && ready <= c.dep_time) {
                how = stop_parent_[u];
            } else if (hl_) {
                const Time slack = c.dep_time - tau - mtt(u);
                for (const HubEntry &e : hl_->in(u)) {
                    if (opt.local_pruning && e.dist > slack) break;
                    ++result.stats.hub_entries_scanned;
                    if (reachable(hub_arr_[e.node]) && hub_arr_[e.node] + e.dist + mtt(u) <= c.dep_time) {
                        Arrival hp = hub_parent_[e.node];
                        hp.hub = e.node;
                        hp.walk += e.dist;
                        how = hp;
                        break;
                    }
                }
            }
            if (how && !was_boarded) boarded_.set(c.trip, Boarding{static_cast<ConnectionId>(i), *how});
        }
        if (boarded_[c.trip].conn == kNone) continue;
        const StopId v = c.arr_stop;
        const Time a = c.arr_time;
        if (a >= stop_arr_[v]) continue;
        stop_arr_.set(v, a);
        stop_parent_.set(v, Arrival{static_cast<ConnectionId>(i)});
        if (v == t && a < best) {
            best = a;
            target_how = Arrival{static_cast<ConnectionId>(i)};
        }
        if (transfers_) {
            for (const Transfer &tr : transfers_->from(v)) {
                const Time w = a + tr.duration;
                if (w >= prune()) break;
                if (w < stop_arr_[tr.to]) {
                    stop_arr_.set(tr.to, w);
                    stop_parent_.set(tr.to, Arrival{static_cast<ConnectionId>(i), v, kNone, tr.duration});
                    if (tr.to == t) {
                        best = w;
                        target_how = stop_parent_[t];
                    }
                }
            }
        } else {
            for (const HubEntry &e : hl_->out(v)) {
                const Time h = a + e.dist;
                if (h >= prune()) break;
                ++result.stats.hub_entries_scanned;
                if (h >= hub_arr_[e.node]) continue;
                hub_arr_.set(e.node, h);
                hub_parent_.set(e.node, Arrival{static_cast<ConnectionId>(i), v, kNone, e.dist});
                if (reachable(to_target_[e.node]) && h + to_target_[e.node] < best) {
                    best = h + to_target_[e.node];
                    target_how = Arrival{static_cast<ConnectionId>(i), v, e.node,
                                         e.dist + to_target_[e.node]};
                }
            }
        }
    }
    result.arrival = best;
    if (opt.build_journey && reachable(best)) result.journey = reconstruct(target_how, best, t);
    return result;
}

Journey CsaEngine::reconstruct(const Arrival &at_target, Time arrival, StopId t) const {
    const auto &conns = tt_.connections();
    Journey j;
    j.departure = tau_;
    j.arrival = arrival;
    StopId at = t;
    Arrival how = at_target;
    while (true) {
        if (how.walk_from != kNone) {
            // The boarding scan stops at the first hub that is early enough,
            // not necessarily the shortest one; report the shortest walk.
            if (hl_) std::tie(how.walk, how.hub) = hl_->query_with_hub(how.walk_from, at);
            j.legs.push_back(WalkLeg{how.walk_from, at, event_time(how.conn), how.walk, how.hub});
            at = how.walk_from;
        }
        if (how.conn == kNone) break;
        const Connection &last = conns[how.conn];
        const Boarding &b = boarded_[last.trip];
        const Connection &first = conns[b.conn];
        j.legs.push_back(RideLeg{last.trip, first.dep_stop, at, first.index_in_trip,
                                 last.index_in_trip + 1, first.dep_time, last.arr_time});
        at = first.dep_stop;
        how = b.how;
    }
    std::reverse(j.legs.begin(), j.legs.end());
    return j;
}

ProfileResult CsaEngine::profile(StopId s, StopId t, Time from, Time to,
                                 const CsaProfileOptions &opt) {
    if (s >= n_ || t >= n_) throw InputError("query stop out of range");
    const Time walk = hl_->query(s, t);
    if (from > to || s == t) return finish_profile({}, from, to, walk);
    auto mtt = [&](StopId u) { return opt.min_transfer_times ? tt_.stop(u).min_transfer_time : 0; };

    const auto &conns = tt_.connections();
    std::size_t end = conns.size();
    if (opt.bound_scan) {
        CsaOptions eat_opt;
        eat_opt.min_transfer_times = opt.min_transfer_times;
        eat_opt.build_journey = false;
        CsaResult bound = eat(s, t, to, eat_opt);
        if (bound.reachable()) end = tt_.connections_up_to(bound.arrival);
    }
    const std::size_t begin = tt_.first_connection_at_or_after(from);

    to_target_.reset();
    for (const HubEntry &e : hl_->in(t)) to_target_.set(e.node, e.dist);
    trip_best_.assign(tt_.num_trips(), kInfinity);
    if (hub_bags_.size() != hl_->num_vertices()) hub_bags_.assign(hl_->num_vertices(), ProfileBag{});
    for (VertexId h : used_bags_) hub_bags_[h].clear();
    used_bags_.clear();

    std::vector<ProfileEntry> at_source;
    for (std::size_t i = end; i-- > begin;) {
        const Connection &c = conns[i];
        Time best = trip_best_[c.trip];
        if (c.arr_stop == t) best = std::min(best, c.arr_time);
        for (const HubEntry &e : hl_->out(c.arr_stop)) {
            const Time at_hub = c.arr_time + e.dist;
            if (reachable(to_target_[e.node])) best = std::min(best, at_hub + to_target_[e.node]);
            if (!hub_bags_[e.node].empty()) best = std::min(best, hub_bags_[e.node].query(at_hub));
        }
        if (!reachable(best)) continue;
        trip_best_[c.trip] = best;
        const StopId u = c.dep_stop;
        if (u == s) at_source.push_back(ProfileEntry{c.dep_time, best});
        for (const HubEntry &e : hl_->in(u)) {
            ProfileBag &bag = hub_bags_[e.node];
            if (bag.empty()) used_bags_.push_back(e.node);
            bag.insert(ProfileEntry{c.dep_time - mtt(u) - e.dist, best});
        }
    }
    for (const HubEntry &e : hl_->out(s)) {
        for (const ProfileEntry &x : hub_bags_[e.node].entries()) {
            at_source.push_back(ProfileEntry{x.dep - e.dist, x.arr});
        }
    }
    return finish_profile(std::move(at_source), from, to, walk);
}

}  // namespace detail

CsaResult csa_eat(const Timetable &tt, const TransferGraph &transfers, StopId s, StopId t, Time tau,
                  const CsaOptions &options) {
    detail::CsaEngine engine(tt, &transfers, nullptr);
    return engine.eat(s, t, tau, options);
}

CsaResult hlcsa_eat(const Timetable &tt, const HubLabeling &hl, StopId s, StopId t, Time tau,
                    const CsaOptions &options) {
    detail::CsaEngine engine(tt, nullptr, &hl);
    return engine.eat(s, t, tau, options);
}

ProfileResult hlpr_csa(const Timetable &tt, const HubLabeling &hl, StopId s, StopId t, Time from,
                       Time to, const CsaProfileOptions &options) {
    detail::CsaEngine engine(tt, nullptr, &hl);
    return engine.profile(s, t, from, to, options);
}

HlCsaRouter::HlCsaRouter(const Timetable &tt, const HubLabeling &hl)
    : tt_(tt), hl_(hl), engine_(std::make_unique<detail::CsaEngine>(tt, nullptr, &hl)) {}

HlCsaRouter::~HlCsaRouter() = default;

CsaResult HlCsaRouter::eat(StopId s, StopId t, Time tau, const CsaOptions &options) {
    return engine_->eat(s, t, tau, options);
}

ProfileResult HlCsaRouter::profile(StopId s, StopId t, Time from, Time to,
                                   const CsaProfileOptions &options) {
    return engine_->profile(s, t, from, to, options);
}

}  // namespace transit_hl
