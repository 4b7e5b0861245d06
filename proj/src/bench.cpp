#include "transit_hl/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "transit_hl/oracle.hpp"

namespace transit_hl {

Dataset make_dataset(Timetable tt, WalkGraph graph, double radius_m) {
    if (graph.num_stops() != tt.num_stops()) {
        throw InputError("walking graph has " + std::to_string(graph.num_stops()) +
                         " stops, timetable has " + std::to_string(tt.num_stops()));
    }
    Dataset d;
    d.transfers = build_transfer_graph(graph, radius_m);
    d.labeling = build_labeling(graph).restricted_to_stops();
    d.timetable = std::move(tt);
    d.graph = std::move(graph);
    return d;
}

namespace {

bool has_gtfs(const std::filesystem::path &dir) {
    return std::filesystem::exists(dir / "stop_times.txt");
}

// Footpaths as a stop-only walking graph.
WalkGraph footpath_graph(const Timetable &tt) {
    std::vector<WalkEdge> edges;
    for (const Footpath &f : tt.footpaths()) {
        if (f.from == f.to) continue;
        edges.push_back(WalkEdge{f.from, f.to, std::max<Time>(f.duration, 1)});
    }
    std::vector<std::optional<Coordinate>> coords(tt.num_stops());
    for (const Stop &s : tt.stops()) {
        if (s.has_coordinates()) coords[s.id] = Coordinate{*s.lat, *s.lon};
    }
    return WalkGraph(tt.num_stops(), tt.num_stops(), std::move(edges), std::move(coords));
}

}  // namespace

WalkGraph load_walking_graph(const std::filesystem::path &dir, const Timetable &tt) {
    namespace fs = std::filesystem;
    if (fs::exists(dir / "walk_graph.bin")) {
        WalkGraph g = load_walk_graph_binary(dir / "walk_graph.bin");
        if (g.num_stops() != tt.num_stops()) throw CorruptFileError("walk_graph.bin: stop count mismatch");
        return g;
    }
    if (fs::exists(dir / "walk_edges.tsv")) {
        std::optional<fs::path> coords;
        if (fs::exists(dir / "walk_coords.tsv")) coords = dir / "walk_coords.tsv";
        return load_walk_graph_text(dir / "walk_edges.tsv", coords, tt.num_stops());
    }
    if (fs::exists(dir / "pedestrian_edges.tsv")) {
        std::optional<fs::path> coords;
        if (fs::exists(dir / "pedestrian_coords.tsv")) coords = dir / "pedestrian_coords.tsv";
        WalkGraph ped = load_walk_graph_text(dir / "pedestrian_edges.tsv", coords, 0);
        return embed_stops(ped, tt.stops()).graph;
    }
    return footpath_graph(tt);
}

Dataset load_dataset(const std::filesystem::path &dir,
                     const std::optional<std::filesystem::path> &labels, double radius_m,
                     const GtfsOptions &gtfs) {
    if (!std::filesystem::is_directory(dir)) throw InputError("no such data directory: " + dir.string());
    Timetable tt = load_timetable(dir, has_gtfs(dir) ? TimetableFormat::GtfsSubset : TimetableFormat::Native, gtfs);
    WalkGraph g = load_walking_graph(dir, tt);
    Dataset d;
    d.transfers = build_transfer_graph(g, radius_m);
    if (labels) {
        d.labeling = load_labeling(*labels);
        if (d.labeling.num_stops() != tt.num_stops()) {
            throw InputError("label file covers " + std::to_string(d.labeling.num_stops()) +
                             " stops, timetable has " + std::to_string(tt.num_stops()));
        }
    } else {
        d.labeling = build_labeling(g).restricted_to_stops();
    }
    d.timetable = std::move(tt);
    d.graph = std::move(g);
    return d;
}

// ---------------------------------------------------------------- fixtures

namespace {

Stop make_stop(StopId id, std::string name, double lat, double lon) {
    Stop s;
    s.id = id;
    s.external_id = name;
    s.name = std::move(name);
    s.lat = lat;
    s.lon = lon;
    return s;
}

RawTrip make_trip(std::string id, std::vector<StopId> stops, std::vector<StopEvent> events) {
    return RawTrip{std::move(id), std::move(stops), std::move(events)};
}

// ~1 m per 1e-5 degrees of latitude (1.11 m); coordinates are for display
// and embedding only, weights below are the walking times.
std::vector<Stop> t1_stops() {
    return {make_stop(0, "A", 48.85000, 2.35000), make_stop(1, "B", 48.85180, 2.35000),
            make_stop(2, "C", 48.85144, 2.35000), make_stop(3, "D", 48.85900, 2.35000)};
}

WalkGraph t1_graph() {
    std::vector<WalkEdge> edges;
    auto both = [&](VertexId a, VertexId b, Time w) {
        edges.push_back({a, b, w});
        edges.push_back({b, a, w});
    };
    both(0, 4, 60);  // A - X
    both(4, 2, 60);  // X - C
    both(1, 2, 30);  // B - C
    std::vector<std::optional<Coordinate>> coords = {
        Coordinate{48.85000, 2.35000}, Coordinate{48.85180, 2.35000}, Coordinate{48.85144, 2.35000},
        Coordinate{48.85900, 2.35000}, Coordinate{48.85072, 2.35000}};
    return WalkGraph(5, 4, std::move(edges), std::move(coords));
}

std::vector<RawTrip> t1_trips(Time shift) {
    const std::string tag = shift ? "+" + std::to_string(shift) : "";
    return {make_trip("t1" + tag, {0, 1}, {{100 + shift, 100 + shift}, {200 + shift, 200 + shift}}),
            make_trip("t2" + tag, {2, 3}, {{300 + shift, 300 + shift}, {400 + shift, 400 + shift}})};
}

}  // namespace

Dataset fixture_t1() { return make_dataset(Timetable(t1_stops(), t1_trips(0)), t1_graph()); }

Dataset fixture_t2() {
    auto trips = t1_trips(0);
    trips.push_back(make_trip("t3", {2, 3}, {{150, 150}, {250, 250}}));
    return make_dataset(Timetable(t1_stops(), std::move(trips)), t1_graph());
}

Dataset fixture_t1_doubled() {
    auto trips = t1_trips(0);
    for (auto &t : t1_trips(3600)) trips.push_back(std::move(t));
    return make_dataset(Timetable(t1_stops(), std::move(trips)), t1_graph());
}

void write_dataset(const Dataset &data, const std::filesystem::path &dir) {
    save_native(data.timetable, dir);
    save_walk_graph_text(data.graph, dir / "walk_edges.tsv", dir / "walk_coords.tsv");
}

Dataset random_instance(std::uint64_t seed, const RandomInstanceOptions &o) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };
    auto chance = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };

    const std::size_t S = std::max<std::size_t>(o.stops, 2);
    std::vector<Stop> stops(S);
    for (StopId i = 0; i < S; ++i) {
        stops[i].id = i;
        stops[i].external_id = "s" + std::to_string(i);
        stops[i].name = stops[i].external_id;
        if (chance(o.min_transfer_chance)) stops[i].min_transfer_time = uniform(1, 120);
    }

    std::vector<RawTrip> trips;
    for (std::size_t line = 0; line < o.lines; ++line) {
        const std::size_t len = static_cast<std::size_t>(
            uniform(2, static_cast<std::int64_t>(std::max<std::size_t>(2, std::min(o.max_line_length, S)))));
        std::vector<StopId> seq(S);
        std::iota(seq.begin(), seq.end(), 0);
        std::shuffle(seq.begin(), seq.end(), rng);
        seq.resize(len);
        std::vector<Time> base(len - 1);
        for (auto &b : base) b = uniform(1, 900);
        for (std::size_t k = 0; k < o.trips_per_line; ++k) {
            RawTrip trip;
            trip.external_id = "L" + std::to_string(line) + "_" + std::to_string(k);
            trip.stops = seq;
            Time t = uniform(0, std::max<Time>(o.horizon - 1, 0));
            // Speed varies per trip, so later trips may overtake earlier ones.
            const double factor = std::uniform_real_distribution<double>(0.6, 1.6)(rng);
            for (std::size_t i = 0; i < len; ++i) {
                StopEvent e;
                e.arr = t;
                e.dep = t + (i + 1 < len && chance(0.3) ? uniform(0, 60) : 0);
                trip.events.push_back(e);
                if (i + 1 < len) t = e.dep + std::max<Time>(1, std::llround(base[i] * factor));
            }
            trips.push_back(std::move(trip));
        }
    }

    const std::size_t n = S + o.extra_vertices;
    std::vector<WalkEdge> edges;
    for (VertexId a = 0; a < n; ++a) {
        for (VertexId b = a + 1; b < n; ++b) {
            if (!chance(o.edge_density)) continue;
            const Time w = uniform(1, 400);
            if (!o.asymmetric) {
                edges.push_back({a, b, w});
                edges.push_back({b, a, w});
                continue;
            }
            switch (uniform(0, 3)) {
                case 0: edges.push_back({a, b, w}); break;
                case 1: edges.push_back({b, a, w}); break;
                case 2:
                    edges.push_back({a, b, w});
                    edges.push_back({b, a, w});
                    break;
                default:
                    edges.push_back({a, b, w});
                    edges.push_back({b, a, uniform(1, 400)});
            }
        }
    }
    return make_dataset(Timetable(std::move(stops), std::move(trips)), WalkGraph(n, S, std::move(edges)));
}

// ---------------------------------------------------------------- queries

namespace {
constexpr Time kDay = 86400;
}

std::vector<QuerySpec> gen_uniform(const Timetable &tt, std::size_t n, std::uint64_t seed, Time interval) {
    if (tt.num_stops() == 0) throw InputError("cannot generate queries without stops");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<StopId> stop(0, static_cast<StopId>(tt.num_stops() - 1));
    std::uniform_int_distribution<Time> time(0, kDay - 1);
    std::vector<QuerySpec> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        QuerySpec q;
        q.source = stop(rng);
        q.target = stop(rng);
        q.dep = time(rng);
        q.dep_to = q.dep + interval;
        out.push_back(q);
    }
    return out;
}

std::vector<QuerySpec> gen_rank(const Timetable &tt, const WalkGraph &g, std::size_t n_sources,
                                std::uint64_t seed, const RankOptions &options) {
    const std::size_t S = tt.num_stops();
    if (S == 0) throw InputError("cannot generate queries without stops");
    if (g.num_stops() != S) throw InputError("walking graph and timetable disagree on stops");
    std::mt19937_64 rng(seed);
    std::vector<double> weights(S, 1.0);
    if (options.trip_weighted) {
        double total = 0;
        for (StopId s = 0; s < S; ++s) {
            weights[s] = 0;
            for (const RoutePosition &rp : tt.routes_at(s)) weights[s] += tt.route(rp.route).trips.size();
            total += weights[s];
        }
        if (total == 0) std::fill(weights.begin(), weights.end(), 1.0);
    }
    std::discrete_distribution<StopId> source_dist(weights.begin(), weights.end());
    std::uniform_int_distribution<Time> time(0, kDay - 1);

    std::vector<QuerySpec> out;
    for (std::size_t i = 0; i < n_sources; ++i) {
        const StopId s = source_dist(rng);
        const std::vector<Time> dist = dijkstra(g, s);
        std::vector<StopId> order;
        for (StopId v = 0; v < S; ++v) {
            if (reachable(dist[v])) order.push_back(v);
        }
        std::sort(order.begin(), order.end(), [&](StopId a, StopId b) {
            if (dist[a] != dist[b]) return dist[a] < dist[b];
            if ((a == s) != (b == s)) return a == s;
            return a < b;
        });
        for (int band = options.first_band; band <= options.last_band; ++band) {
            const std::size_t lo = std::size_t{1} << band;
            const std::size_t hi = std::min(std::size_t{1} << (band + 1), order.size());
            if (lo >= hi) break;
            std::uniform_int_distribution<std::size_t> pick(lo, hi - 1);
            QuerySpec q;
            q.source = s;
            q.target = order[pick(rng)];
            q.dep = time(rng);
            q.dep_to = q.dep + options.interval;
            q.rank_band = band;
            out.push_back(q);
        }
    }
    return out;
}

void write_queries(std::ostream &out, const std::vector<QuerySpec> &queries, const Timetable &tt) {
    out << "source\ttarget\tdep\tdep_to\trank_band\n";
    for (const QuerySpec &q : queries) {
        out << tt.stop(q.source).external_id << '\t' << tt.stop(q.target).external_id << '\t' << q.dep << '\t'
            << q.dep_to << '\t' << q.rank_band << '\n';
    }
}

std::vector<QuerySpec> read_queries(const std::filesystem::path &path, const Timetable &tt) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::vector<QuerySpec> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string s, t;
        QuerySpec q;
        if (!(ls >> s >> t >> q.dep >> q.dep_to)) throw ParseError(path.string(), line_no, "malformed query");
        if (!(ls >> q.rank_band)) q.rank_band = -1;
        auto a = tt.find_stop(s), b = tt.find_stop(t);
        if (!a || !b) throw DanglingReferenceError("unknown stop in " + path.string() + ":" + std::to_string(line_no));
        q.source = *a;
        q.target = *b;
        out.push_back(q);
    }
    return out;
}

// ---------------------------------------------------------------- algorithms

namespace {

struct AlgoName {
    Algo algo;
    const char *name;
};
constexpr AlgoName kAlgoNames[] = {
    {Algo::Raptor, "raptor"},         {Algo::McRaptor, "mcraptor"},     {Algo::Csa, "csa"},
    {Algo::HlRaptor, "hlraptor"},     {Algo::HlMcRaptor, "hlmcraptor"}, {Algo::HlCsa, "hlcsa"},
    {Algo::Oracle, "oracle"},         {Algo::HlprRaptor, "hlprraptor"}, {Algo::HlprCsa, "hlprcsa"},
};

bool needs_labeling(Algo a) {
    return a == Algo::HlRaptor || a == Algo::HlMcRaptor || a == Algo::HlCsa || a == Algo::HlprRaptor ||
           a == Algo::HlprCsa;
}
bool needs_transfers(Algo a) { return a == Algo::Raptor || a == Algo::McRaptor || a == Algo::Csa; }
bool is_mc(Algo a) { return a == Algo::McRaptor || a == Algo::HlMcRaptor; }

// Per-thread query state for one algorithm.
class Runner {
public:
    Runner(const Dataset &d, Algo algo) : d_(d), algo_(algo) {
        const Timetable &tt = d.timetable;
        if (needs_labeling(algo) && d.labeling.num_stops() != tt.num_stops()) {
            throw InputError(algo_name(algo) + " needs a hub labeling for this timetable");
        }
        if (needs_transfers(algo) && d.transfers.num_stops() != tt.num_stops()) {
            throw InputError(algo_name(algo) + " needs a transfer graph for this timetable");
        }
        if (algo == Algo::HlRaptor || algo == Algo::HlprRaptor) hlr_ = std::make_unique<HlRaptorRouter>(tt, d.labeling);
        if (algo == Algo::HlCsa || algo == Algo::HlprCsa) hlc_ = std::make_unique<HlCsaRouter>(tt, d.labeling);
        if (algo == Algo::Oracle) {
            if (d.graph.num_stops() != tt.num_stops()) throw InputError("oracle needs the walking graph");
            oracle_ = std::make_unique<TransitOracle>(tt, d.graph);
        }
    }

    QueryOutcome run(const QuerySpec &q, RoundStats *stats) {
        const Timetable &tt = d_.timetable;
        if (q.source >= tt.num_stops() || q.target >= tt.num_stops()) {
            throw InputError("query stop out of range");
        }
        QueryOutcome out;
        out.query = q;
        switch (algo_) {
            case Algo::Raptor: {
                RaptorOptions o;
                o.build_journey = false;
                out.arrival = raptor_eat(tt, d_.transfers, q.source, q.target, q.dep, o).arrival;
                break;
            }
            case Algo::McRaptor:
                out.pareto = mc_raptor(tt, d_.transfers, q.source, q.target, q.dep).frontier;
                break;
            case Algo::Csa: {
                CsaOptions o;
                o.build_journey = false;
                out.arrival = csa_eat(tt, d_.transfers, q.source, q.target, q.dep, o).arrival;
                break;
            }
            case Algo::HlRaptor: {
                RaptorOptions o;
                o.build_journey = false;
                EatResult r = hlr_->eat(q.source, q.target, q.dep, o);
                out.arrival = r.arrival;
                if (stats) {
                    for (const RoundStats &rs : r.rounds) {
                        stats->hub_entries_scanned += rs.hub_entries_scanned;
                        stats->hub_entries_bound += rs.hub_entries_bound;
                    }
                }
                break;
            }
            case Algo::HlMcRaptor:
                out.pareto = hlmc_raptor(tt, d_.labeling, q.source, q.target, q.dep).frontier;
                break;
            case Algo::HlCsa: {
                CsaOptions o;
                o.build_journey = false;
                out.arrival = hlc_->eat(q.source, q.target, q.dep, o).arrival;
                break;
            }
            case Algo::Oracle:
                out.arrival = oracle_->eat(q.source, q.target, q.dep);
                break;
            case Algo::HlprRaptor:
                out.profile = hlr_->profile(q.source, q.target, q.dep, q.dep_to).entries;
                break;
            case Algo::HlprCsa:
                out.profile = hlc_->profile(q.source, q.target, q.dep, q.dep_to).entries;
                break;
        }
        return out;
    }

private:
    const Dataset &d_;
    Algo algo_;
    std::unique_ptr<HlRaptorRouter> hlr_;
    std::unique_ptr<HlCsaRouter> hlc_;
    std::unique_ptr<TransitOracle> oracle_;
};

double percentile(std::vector<double> v, double p) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    // nearest rank
    const std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size())));
    return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

double median(std::vector<double> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

}  // namespace

Algo parse_algo(const std::string &name) {
    for (const AlgoName &a : kAlgoNames) {
        if (name == a.name) return a.algo;
    }
    throw InputError("unknown algorithm '" + name + "'");
}

std::string algo_name(Algo algo) {
    for (const AlgoName &a : kAlgoNames) {
        if (algo == a.algo) return a.name;
    }
    return "?";
}

bool is_profile_algo(Algo algo) { return algo == Algo::HlprRaptor || algo == Algo::HlprCsa; }

BenchResult run_bench(const Dataset &data, const std::vector<QuerySpec> &queries, Algo algo,
                      const BenchOptions &options) {
    BenchResult result;
    result.algo = algo;
    result.rows.resize(queries.size());

    if (options.threads > 1) {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(options.threads);
        for (unsigned w = 0; w < options.threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    Runner runner(data, algo);
                    for (std::size_t i = w; i < queries.size(); i += options.threads) {
                        result.rows[i] = runner.run(queries[i], nullptr);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto &t : pool) t.join();
        for (auto &e : errors) {
            if (e) std::rethrow_exception(e);
        }
        return result;
    }

    Runner runner(data, algo);
    RoundStats stats;
    const int reps = std::max(options.repetitions, 1);
    std::vector<double> medians;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const QueryOutcome warm = runner.run(queries[i], &stats);
        std::vector<double> times;
        for (int r = 0; r < reps; ++r) {
            const auto start = std::chrono::steady_clock::now();
            QueryOutcome o = runner.run(queries[i], nullptr);
            const auto stop = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double, std::micro>(stop - start).count());
            if (!o.same_result(warm)) result.deterministic = false;
        }
        QueryOutcome &row = result.rows[i];
        row = warm;
        row.micros = median(times);
        medians.push_back(row.micros);
    }
    result.hub_entries_scanned = stats.hub_entries_scanned;
    result.hub_entries_bound = stats.hub_entries_bound;
    if (!medians.empty()) {
        result.mean_micros = std::accumulate(medians.begin(), medians.end(), 0.0) / medians.size();
    }
    result.median_micros = median(medians);
    result.p95_micros = percentile(medians, 0.95);
    return result;
}

void write_bench_tsv(std::ostream &out, const BenchResult &result, const Timetable &tt) {
    out << "source\ttarget\tdep\tdep_to\trank_band\tresult\tmicros\n";
    for (const QueryOutcome &row : result.rows) {
        const QuerySpec &q = row.query;
        out << tt.stop(q.source).external_id << '\t' << tt.stop(q.target).external_id << '\t' << q.dep
            << '\t' << q.dep_to << '\t' << q.rank_band << '\t';
        if (is_profile_algo(result.algo)) {
            for (std::size_t i = 0; i < row.profile.size(); ++i) {
                out << (i ? "," : "") << row.profile[i].dep << ':' << row.profile[i].arr;
            }
        } else if (is_mc(result.algo)) {
            for (std::size_t i = 0; i < row.pareto.size(); ++i) {
                const McValue &v = row.pareto[i];
                out << (i ? "," : "") << v.arrival << '/' << v.trips << '/' << v.walk;
            }
        } else if (reachable(row.arrival)) {
            out << row.arrival;
        } else {
            out << "unreachable";
        }
        out << '\t' << row.micros << '\n';
    }
}

std::string bench_summary_json(const BenchResult &result) {
    nlohmann::json j;
    j["algo"] = algo_name(result.algo);
    j["queries"] = result.rows.size();
    j["mean_us"] = result.mean_micros;
    j["median_us"] = result.median_micros;
    j["p95_us"] = result.p95_micros;
    j["deterministic"] = result.deterministic;
    if (result.algo == Algo::HlRaptor) {
        j["hub_entries_scanned"] = result.hub_entries_scanned;
        j["hub_entries_bound"] = result.hub_entries_bound;
    }
    std::size_t reached = 0;
    for (const QueryOutcome &row : result.rows) {
        reached += reachable(row.arrival) || !row.pareto.empty() || !row.profile.empty();
    }
    j["reached"] = reached;
    return j.dump(2);
}

GainReport gain_report(const Dataset &data, const std::vector<QuerySpec> &queries, Algo restricted,
                       Algo unrestricted, const GainOptions &options) {
    for (Algo a : {restricted, unrestricted}) {
        if (is_profile_algo(a) || is_mc(a)) {
            throw InputError("gain report needs earliest-arrival algorithms, got " + algo_name(a));
        }
    }
    Runner r_runner(data, restricted);
    Runner u_runner(data, unrestricted);
    GainReport report;
    std::vector<double> gains;
    for (const QuerySpec &q : queries) {
        if (options.daytime_only && (q.dep < 6 * 3600 || q.dep > 20 * 3600)) {
            ++report.filtered_out;
            continue;
        }
        const Time r = r_runner.run(q, nullptr).arrival;
        const Time u = u_runner.run(q, nullptr).arrival;
        if (!reachable(r) && !reachable(u)) {
            ++report.unreachable_both;
        } else if (!reachable(r)) {
            ++report.unreachable_restricted;
        } else if (!reachable(u)) {
            ++report.unreachable_unrestricted;
        } else {
            GainRow row;
            row.query = q;
            row.restricted = r - q.dep;
            row.unrestricted = u - q.dep;
            row.gain = row.restricted == 0
                           ? 0.0
                           : static_cast<double>(row.restricted - row.unrestricted) / row.restricted;
            gains.push_back(row.gain);
            report.rows.push_back(row);
        }
    }
    if (!gains.empty()) report.average = std::accumulate(gains.begin(), gains.end(), 0.0) / gains.size();
    report.median = median(gains);
    return report;
}

std::string gain_summary_json(const GainReport &report) {
    nlohmann::json j;
    j["compared"] = report.rows.size();
    j["average_gain"] = report.average;
    j["median_gain"] = report.median;
    j["unreachable_restricted"] = report.unreachable_restricted;
    j["unreachable_unrestricted"] = report.unreachable_unrestricted;
    j["unreachable_both"] = report.unreachable_both;
    j["filtered_out"] = report.filtered_out;
    return j.dump(2);
}

}  // namespace transit_hl
