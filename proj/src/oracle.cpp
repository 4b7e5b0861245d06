#include "transit_hl/oracle.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <tuple>

namespace transit_hl {

TransitOracle::TransitOracle(const Timetable &tt, const WalkGraph &g, const OracleOptions &options)
    : tt_(tt), options_(options), n_(tt.num_stops()) {
    if (g.num_stops() != n_) throw InputError("walking graph and timetable disagree on stops");
    const auto &conns = tt.connections();
    large_ = n_ > 50 || conns.size() > 5000;
    if (large_ && options.warn_if_large) {
        std::cerr << "warning: oracle on a large instance (" << n_ << " stops, " << conns.size()
                  << " connections), expect it to be slow\n";
    }
    dist_.assign(n_ * n_, kInfinity);
    for (StopId a = 0; a < n_; ++a) {
        auto d = dijkstra(g, a);
        std::copy_n(d.begin(), n_, dist_.begin() + static_cast<std::ptrdiff_t>(a * n_));
    }

    // Node numbering before shuffling: dep nodes, arr nodes, boarding nodes.
    const std::size_t m = conns.size();
    std::vector<Time> time(2 * m);
    std::vector<StopId> stop_of(2 * m, kNone);
    for (std::size_t c = 0; c < m; ++c) {
        time[c] = conns[c].dep_time;
        time[m + c] = conns[c].arr_time;
        stop_of[m + c] = conns[c].arr_stop;
    }
    std::vector<std::vector<std::pair<Time, std::uint32_t>>> departures(n_);  // (time, conn)
    for (std::size_t c = 0; c < m; ++c) {
        departures[conns[c].dep_stop].emplace_back(conns[c].dep_time, static_cast<std::uint32_t>(c));
    }
    boarding_.assign(n_, {});
    for (StopId p = 0; p < n_; ++p) {
        std::sort(departures[p].begin(), departures[p].end());
        for (auto [t, c] : departures[p]) {
            boarding_[p].emplace_back(t, static_cast<std::uint32_t>(time.size()));
            time.push_back(t);
            stop_of.push_back(kNone);
        }
    }
    const std::size_t num_nodes = time.size();

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    // next connection of the same trip
    std::vector<std::vector<std::uint32_t>> by_trip(tt.num_trips());
    for (std::size_t c = 0; c < m; ++c) {
        auto &v = by_trip[conns[c].trip];
        if (v.size() <= conns[c].index_in_trip) v.resize(conns[c].index_in_trip + 1, kNone);
        v[conns[c].index_in_trip] = static_cast<std::uint32_t>(c);
    }
    for (std::size_t c = 0; c < m; ++c) {
        edges.emplace_back(c, m + c);  // ride
        const auto &trip = by_trip[conns[c].trip];
        const std::uint32_t next = conns[c].index_in_trip + 1;
        if (next < trip.size() && trip[next] != kNone) edges.emplace_back(m + c, trip[next]);  // stay
    }
    for (StopId p = 0; p < n_; ++p) {
        for (std::size_t i = 0; i < boarding_[p].size(); ++i) {
            const std::uint32_t b = boarding_[p][i].second;
            edges.emplace_back(b, departures[p][i].second);  // board
            if (i + 1 < boarding_[p].size()) edges.emplace_back(b, boarding_[p][i + 1].second);  // wait
        }
    }
    for (std::size_t c = 0; c < m; ++c) {  // transfers, including staying at the same stop
        const StopId v = conns[c].arr_stop;
        for (StopId w = 0; w < n_; ++w) {
            const Time d = dist_[v * n_ + w];
            if (!reachable(d)) continue;
            const std::uint32_t b = first_boarding(w, conns[c].arr_time + d + mtt(w));
            if (b != kNone) edges.emplace_back(m + c, b);
        }
    }

    std::vector<std::uint32_t> perm(num_nodes);
    std::iota(perm.begin(), perm.end(), 0);
    if (options.shuffle_seed) {
        std::mt19937_64 rng(*options.shuffle_seed);
        std::shuffle(perm.begin(), perm.end(), rng);
    }
    node_time_.assign(num_nodes, 0);
    node_stop_.assign(num_nodes, kNone);
    for (std::size_t v = 0; v < num_nodes; ++v) {
        node_time_[perm[v]] = time[v];
        node_stop_[perm[v]] = stop_of[v];
    }
    arr_node_.resize(m);
    for (std::size_t c = 0; c < m; ++c) arr_node_[c] = perm[m + c];
    for (auto &list : boarding_) {
        for (auto &entry : list) entry.second = perm[entry.second];
    }
    offsets_.assign(num_nodes + 1, 0);
    for (auto &[a, b] : edges) {
        a = perm[a];
        b = perm[b];
        ++offsets_[a + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    heads_.resize(edges.size());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (auto [a, b] : edges) heads_[fill[a]++] = b;
}

std::uint32_t TransitOracle::first_boarding(StopId w, Time threshold) const {
    const auto &list = boarding_[w];
    auto it = std::lower_bound(list.begin(), list.end(), threshold,
                               [](const std::pair<Time, std::uint32_t> &e, Time x) { return e.first < x; });
    return it == list.end() ? kNone : it->second;
}

Time TransitOracle::eat(StopId s, StopId t, Time tau, bool require_trip) const {
    if (s >= n_ || t >= n_) throw InputError("query stop out of range");
    Time best = require_trip ? kInfinity : tau + walk(s, t);
    if (!reachable(walk(s, t)) && !require_trip) best = kInfinity;
    if (s == t && !require_trip) return tau;

    std::vector<char> seen(node_time_.size(), 0);
    using Item = std::pair<Time, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (StopId w = 0; w < n_; ++w) {
        const Time d = walk(s, w);
        if (!reachable(d)) continue;
        const std::uint32_t b = first_boarding(w, tau + d + (w == s ? 0 : mtt(w)));
        if (b != kNone) queue.emplace(node_time_[b], b);
    }
    while (!queue.empty()) {
        auto [time, v] = queue.top();
        queue.pop();
        if (seen[v]) continue;
        seen[v] = 1;
        if (node_stop_[v] != kNone) {
            const Time d = walk(node_stop_[v], t);
            if (reachable(d)) best = std::min(best, time + d);
        }
        for (std::uint32_t e = offsets_[v]; e < offsets_[v + 1]; ++e) {
            const std::uint32_t w = heads_[e];
            if (!seen[w]) queue.emplace(node_time_[w], w);
        }
    }
    return best;
}

std::vector<McValue> TransitOracle::pareto(StopId s, StopId t, Time tau, int max_trips,
                                           std::size_t budget) const {
    if (s >= n_ || t >= n_) throw InputError("query stop out of range");
    enum Mode { Origin, AfterTrip, AfterWalk };
    // Continuations from (stop, time, trips left, mode): absolute arrival,
    // trips used and walking time from here on.
    std::map<std::tuple<StopId, Time, int, int>, std::vector<McValue>> memo;
    std::size_t steps = 0;

    auto keep_pareto = [](std::vector<McValue> &v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        std::vector<McValue> out;
        for (const McValue &x : v) {
            bool dominated = false;
            for (const McValue &y : out) {
                if (y.arrival <= x.arrival && y.trips <= x.trips && y.walk <= x.walk) dominated = true;
            }
            if (!dominated) out.push_back(x);
        }
        v = std::move(out);
    };

    std::function<const std::vector<McValue> &(StopId, Time, int, int)> solve =
        [&](StopId p, Time a, int left, int mode) -> const std::vector<McValue> & {
        auto key = std::make_tuple(p, a, left, mode);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        if (++steps > budget) throw OracleBudgetExceeded("oracle search budget exceeded");
        std::vector<McValue> found;
        if (p == t) {
            found.push_back(McValue{a, 0, 0});
        } else {
            if (mode != AfterWalk) {
                for (StopId w = 0; w < n_; ++w) {
                    const Time d = walk(p, w);
                    if (w == p || !reachable(d)) continue;
                    for (const McValue &x : solve(w, a + d, left, AfterWalk)) {
                        found.push_back(McValue{x.arrival, x.trips, x.walk + d});
                    }
                }
            }
            if (left > 0) {
                const Time ready = a + (mode == Origin ? 0 : mtt(p));
                for (const RoutePosition &rp : tt_.routes_at(p)) {
                    const Route &route = tt_.route(rp.route);
                    for (TripId id : route.trips) {
                        const Trip &trip = tt_.trip(id);
                        if (trip.events[rp.index].dep < ready) continue;
                        for (std::size_t j = rp.index + 1; j < route.stops.size(); ++j) {
                            for (const McValue &x :
                                 solve(route.stops[j], trip.events[j].arr, left - 1, AfterTrip)) {
                                found.push_back(McValue{x.arrival, x.trips + 1, x.walk});
                            }
                        }
                    }
                }
            }
        }
        keep_pareto(found);
        return memo.emplace(key, std::move(found)).first->second;
    };

    std::vector<McValue> result = solve(s, tau, max_trips, Origin);
    return result;
}

ProfileResult TransitOracle::profile(StopId s, StopId t, Time from, Time to, SweepMode mode) const {
    ProfileResult result;
    result.walk_duration = walk(s, t);
    if (from > to || s == t) return result;
    std::vector<Time> times;
    if (mode == SweepMode::EverySecond) {
        for (Time x = from; x <= to; ++x) times.push_back(x);
    } else {
        times = {from, to};
        for (StopId w = 0; w < n_; ++w) {
            const Time d = walk(s, w);
            if (!reachable(d)) continue;
            for (auto [dep, node] : boarding_[w]) {
                const Time last = dep - d - (w == s ? 0 : mtt(w));
                if (last >= from && last <= to) times.push_back(last);
            }
        }
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());
    }
    std::vector<ProfileEntry> points;
    for (Time x : times) {
        const Time a = eat(s, t, x, true);
        if (reachable(a)) points.push_back(ProfileEntry{x, a});
    }
    // plain quadratic Pareto filter: later departure and earlier arrival win
    for (const ProfileEntry &p : points) {
        bool dominated = false;
        for (const ProfileEntry &q : points) {
            if (q.dep >= p.dep && q.arr <= p.arr && (q.dep != p.dep || q.arr != p.arr)) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        if (reachable(result.walk_duration) && p.arr - p.dep >= result.walk_duration) continue;
        result.entries.push_back(p);
    }
    std::sort(result.entries.begin(), result.entries.end());
    return result;
}

Time oracle_eat(const Timetable &tt, const WalkGraph &g, StopId s, StopId t, Time tau) {
    return TransitOracle(tt, g).eat(s, t, tau);
}

std::vector<McValue> oracle_pareto(const Timetable &tt, const WalkGraph &g, StopId s, StopId t,
                                   Time tau, int max_trips) {
    return TransitOracle(tt, g).pareto(s, t, tau, max_trips);
}

ProfileResult oracle_profile(const Timetable &tt, const WalkGraph &g, StopId s, StopId t, Time from,
                             Time to) {
    return TransitOracle(tt, g).profile(s, t, from, to);
}

}  // namespace transit_hl
