#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "transit_hl/csa.hpp"
#include "transit_hl/hl_raptor.hpp"
#include "transit_hl/hub_labeling.hpp"
#include "transit_hl/profile.hpp"
#include "transit_hl/raptor.hpp"
#include "transit_hl/timetable.hpp"
#include "transit_hl/walk_graph.hpp"

namespace transit_hl {

// Everything the algorithms need for one network.
struct Dataset {
    Timetable timetable;
    WalkGraph graph;
    TransferGraph transfers;  // restricted walking
    HubLabeling labeling;     // unrestricted walking
};

// Default restriction for the transfer graph, in meters of walking.
inline constexpr double kTransferRadiusMeters = 75.0;

// Builds the transfer graph and the labeling for a timetable and walking graph.
Dataset make_dataset(Timetable tt, WalkGraph graph, double radius_m = kTransferRadiusMeters);

// Dataset directory layout:
//   stops.tsv, stop_times.tsv, footpaths.tsv (native) or GTFS *.txt files
//   walk_edges.tsv [+ walk_coords.tsv]: walking graph whose vertices
//     0..|S|-1 are the stops in file order
//   pedestrian_edges.tsv + pedestrian_coords.tsv: stop-free pedestrian
//     network, stops get embedded by coordinates
// Without either graph, the footpaths themselves form the walking graph.
// labels: optional label file, built from the graph when absent.
Dataset load_dataset(const std::filesystem::path &dir,
                     const std::optional<std::filesystem::path> &labels = std::nullopt,
                     double radius_m = kTransferRadiusMeters, const GtfsOptions &gtfs = {});
WalkGraph load_walking_graph(const std::filesystem::path &dir, const Timetable &tt);

// Hand-checkable fixtures. T1: stops A, B, C, D and one extra vertex X;
// footpaths A-X 60 s, X-C 60 s, B-C 30 s (both ways), D isolated; trip t1
// A 100 -> B 200, trip t2 C 300 -> D 400. Coordinates put B and C 40 m
// apart and A, C 160 m apart.
Dataset fixture_t1();
// T1 plus trip t3 C 150 -> D 250, only reachable with the 120 s walk A-C.
Dataset fixture_t2();
// T1 with t1 and t2 repeated one hour later.
Dataset fixture_t1_doubled();
// Native timetable plus walk_edges.tsv / walk_coords.tsv, readable by load_dataset.
void write_dataset(const Dataset &data, const std::filesystem::path &dir);

// Random network for property tests: stops first, extra walking vertices,
// directed walking edges with positive weights, routes with trips that may
// overtake (so route splitting kicks in), durations of at least 1 s.
struct RandomInstanceOptions {
    std::size_t stops = 12;
    std::size_t extra_vertices = 6;
    std::size_t lines = 5;
    std::size_t trips_per_line = 6;
    std::size_t max_line_length = 5;
    double edge_density = 0.25;   // chance of a walking edge per vertex pair
    double min_transfer_chance = 0.3;
    Time horizon = 4 * 3600;      // first departures fall in [0, horizon)
    bool asymmetric = true;
};
Dataset random_instance(std::uint64_t seed, const RandomInstanceOptions &options = {});

struct QuerySpec {
    StopId source = 0;
    StopId target = 0;
    Time dep = 0;
    Time dep_to = 0;   // end of the departure interval for profile queries
    int rank_band = -1;
    bool operator==(const QuerySpec &) const = default;
};

// Departures uniform in [0, 86400); profile intervals are [dep, dep + interval].
std::vector<QuerySpec> gen_uniform(const Timetable &tt, std::size_t n, std::uint64_t seed,
                                   Time interval = 2 * 3600);

struct RankOptions {
    // Sources drawn with probability proportional to the trips serving them.
    bool trip_weighted = false;
    Time interval = 2 * 3600;
    int first_band = 2;
    int last_band = 14;
};
// Per source, one target from each rank band [2^i, 2^(i+1)) where rank is
// the 0-based position in the walking-distance order from the source
// (source has rank 0; unreachable stops are never picked).
std::vector<QuerySpec> gen_rank(const Timetable &tt, const WalkGraph &g, std::size_t n_sources,
                                std::uint64_t seed, const RankOptions &options = {});

// Query files: header line, then "source target dep dep_to rank_band" per
// line, tab separated, stops by external id.
void write_queries(std::ostream &out, const std::vector<QuerySpec> &queries, const Timetable &tt);
std::vector<QuerySpec> read_queries(const std::filesystem::path &path, const Timetable &tt);

enum class Algo { Raptor, McRaptor, Csa, HlRaptor, HlMcRaptor, HlCsa, Oracle, HlprRaptor, HlprCsa };
Algo parse_algo(const std::string &name);
std::string algo_name(Algo algo);
bool is_profile_algo(Algo algo);

struct QueryOutcome {
    QuerySpec query;
    Time arrival = kInfinity;              // earliest-arrival algorithms
    std::vector<McValue> pareto;           // multi-criteria algorithms
    std::vector<ProfileEntry> profile;     // profile algorithms
    double micros = 0;                     // median over repetitions
    bool same_result(const QueryOutcome &o) const {
        return arrival == o.arrival && pareto == o.pareto && profile == o.profile;
    }
};

struct BenchResult {
    Algo algo = Algo::HlRaptor;
    std::vector<QueryOutcome> rows;
    double mean_micros = 0;
    double median_micros = 0;
    double p95_micros = 0;
    bool deterministic = true;  // identical outputs across repetitions
    // HLRaptor only: hub-list entries read vs. the list-length bound, summed
    // over all queries and rounds.
    std::size_t hub_entries_scanned = 0;
    std::size_t hub_entries_bound = 0;
};

struct BenchOptions {
    int repetitions = 3;
    // More than one thread: correctness sweep, a single untimed run per query.
    unsigned threads = 1;
};

// One warm-up run per query (not timed), then `repetitions` timed runs.
// Throws InputError when the dataset lacks what the algorithm needs.
BenchResult run_bench(const Dataset &data, const std::vector<QuerySpec> &queries, Algo algo,
                      const BenchOptions &options = {});
void write_bench_tsv(std::ostream &out, const BenchResult &result, const Timetable &tt);
std::string bench_summary_json(const BenchResult &result);

struct GainRow {
    QuerySpec query;
    Time restricted = kInfinity;    // travel times
    Time unrestricted = kInfinity;
    double gain = 0;
};

struct GainReport {
    std::vector<GainRow> rows;  // queries where both are reachable
    double average = 0;
    double median = 0;
    std::size_t unreachable_restricted = 0;  // reachable only without restriction
    std::size_t unreachable_both = 0;
    std::size_t unreachable_unrestricted = 0;
    std::size_t filtered_out = 0;            // outside the daytime window
};

struct GainOptions {
    // Keep only departures in [06:00, 20:00].
    bool daytime_only = false;
};

// Earliest-arrival algorithms only. gain = (restricted - unrestricted) /
// restricted travel time, 0 when the restricted travel time is 0.
GainReport gain_report(const Dataset &data, const std::vector<QuerySpec> &queries, Algo restricted,
                       Algo unrestricted, const GainOptions &options = {});
std::string gain_summary_json(const GainReport &report);

}  // namespace transit_hl
