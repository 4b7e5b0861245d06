#pragma once

// Brute-force references for tests: a time-expanded graph searched with
// Dijkstra, an exhaustive journey enumeration for Pareto sets and a sweep
// over departure times for profiles. Walking uses all-pairs distances of
// the full walking graph.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "transit_hl/profile.hpp"
#include "transit_hl/raptor.hpp"
#include "transit_hl/timetable.hpp"
#include "transit_hl/walk_graph.hpp"

namespace transit_hl {

class OracleBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleOptions {
    // Shuffle the event node numbering; results must not depend on it.
    std::optional<std::uint64_t> shuffle_seed;
    bool min_transfer_times = true;
    // Print a warning to stderr for instances beyond the intended size.
    bool warn_if_large = true;
};

enum class SweepMode {
    EverySecond,
    // Only the departure times at which the set of catchable departures
    // changes (last moment to reach each departure event), plus the ends.
    // Gives the same profile as EverySecond.
    Breakpoints,
};

class TransitOracle {
public:
    TransitOracle(const Timetable &tt, const WalkGraph &g, const OracleOptions &options = {});

    // Earliest arrival at t leaving s at or after tau.
    Time eat(StopId s, StopId t, Time tau, bool require_trip = false) const;

    // Pareto set over (arrival, trips, walking time) of all journeys with at
    // most max_trips trips. Throws OracleBudgetExceeded past `budget`
    // search steps.
    std::vector<McValue> pareto(StopId s, StopId t, Time tau, int max_trips,
                                std::size_t budget = 50'000'000) const;

    ProfileResult profile(StopId s, StopId t, Time from, Time to,
                          SweepMode mode = SweepMode::Breakpoints) const;

    Time walk(StopId a, StopId b) const { return dist_[a * n_ + b]; }
    bool large() const { return large_; }
    std::size_t num_nodes() const { return node_time_.size(); }
    std::size_t num_edges() const { return heads_.size(); }

private:
    std::uint32_t first_boarding(StopId w, Time threshold) const;
    Time mtt(StopId w) const { return options_.min_transfer_times ? tt_.stop(w).min_transfer_time : 0; }

    const Timetable &tt_;
    OracleOptions options_;
    std::size_t n_;
    bool large_ = false;
    std::vector<Time> dist_;  // n x n stop-to-stop walking distances

    // event graph
    std::vector<Time> node_time_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> heads_;
    std::vector<std::uint32_t> arr_node_;    // per connection
    std::vector<StopId> node_stop_;          // stop of every arrival node, kNone otherwise
    // per stop: boarding nodes sorted by time
    std::vector<std::vector<std::pair<Time, std::uint32_t>>> boarding_;
};

Time oracle_eat(const Timetable &tt, const WalkGraph &g, StopId s, StopId t, Time tau);
std::vector<McValue> oracle_pareto(const Timetable &tt, const WalkGraph &g, StopId s, StopId t,
                                   Time tau, int max_trips);
ProfileResult oracle_profile(const Timetable &tt, const WalkGraph &g, StopId s, StopId t, Time from,
                             Time to);

}  // namespace transit_hl
