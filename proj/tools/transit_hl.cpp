#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "transit_hl/bench.hpp"
#include "transit_hl/csa.hpp"
#include "transit_hl/hl_raptor.hpp"
#include "transit_hl/oracle.hpp"

using namespace transit_hl;
namespace fs = std::filesystem;

namespace {

struct DataArgs {
    std::string data;
    std::string labels;
    double radius = kTransferRadiusMeters;
    GtfsOptions gtfs;
};

void add_data_flags(CLI::App *cmd, DataArgs &a) {
    cmd->add_option("--data", a.data, "Dataset directory (native tables or GTFS subset)")->required();
    cmd->add_option("--labels", a.labels, "Hub label file (default: DATA/labels.bin if present)");
    cmd->add_option("--radius", a.radius, "Transfer radius in meters for restricted algorithms");
    cmd->add_option("--service", a.gtfs.service_id, "GTFS: keep only trips of this service_id");
}

Dataset open_dataset(const DataArgs &a) {
    std::optional<fs::path> labels;
    if (!a.labels.empty()) {
        labels = a.labels;
    } else if (fs::exists(fs::path(a.data) / "labels.bin")) {
        labels = fs::path(a.data) / "labels.bin";
    }
    return load_dataset(a.data, labels, a.radius, a.gtfs);
}

StopId stop_arg(const Timetable &tt, const std::string &name) {
    if (auto s = tt.find_stop(name)) return *s;
    throw InputError("unknown stop '" + name + "'");
}

// Output goes to --out when given, else stdout.
class Sink {
public:
    explicit Sink(const std::string &path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InputError("cannot write " + path);
        }
    }
    std::ostream &get() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void print_journey(const std::optional<Journey> &j, const Timetable &tt) {
    if (j) std::cout << describe(*j, tt);
}

void print_pareto(const std::vector<McValue> &front) {
    for (const McValue &v : front) {
        std::cout << "arrival " << format_time(v.arrival) << " (" << v.arrival << ")  trips " << v.trips
                  << "  walk " << v.walk << " s\n";
    }
    if (front.empty()) std::cout << "unreachable\n";
}

struct GenArgs {
    std::string kind = "uniform";
    std::size_t n = 1000;
    std::uint64_t seed = 1;
    Time interval = 2 * 3600;
    bool trip_weighted = false;
    std::string queries;
};

void add_gen_flags(CLI::App *cmd, GenArgs &g, bool with_file) {
    cmd->add_option("--kind", g.kind, "uniform or rank")->check(CLI::IsMember({"uniform", "rank"}));
    cmd->add_option("--n", g.n, "Queries (uniform) or sources (rank)");
    cmd->add_option("--seed", g.seed, "Random seed");
    cmd->add_option("--interval", g.interval, "Profile interval length in seconds");
    cmd->add_flag("--trip-weighted", g.trip_weighted, "Rank: draw sources by number of serving trips");
    if (with_file) cmd->add_option("--queries", g.queries, "Query file written by 'gen' (else generated)");
}

std::vector<QuerySpec> queries_for(const Dataset &d, const GenArgs &g) {
    if (!g.queries.empty()) return read_queries(g.queries, d.timetable);
    if (g.kind == "rank") {
        RankOptions o;
        o.trip_weighted = g.trip_weighted;
        o.interval = g.interval;
        return gen_rank(d.timetable, d.graph, g.n, g.seed, o);
    }
    return gen_uniform(d.timetable, g.n, g.seed, g.interval);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Public transit journey planning with unrestricted walking"};
    app.require_subcommand(1);

    // build
    DataArgs build_data;
    std::string build_out;
    auto *build = app.add_subcommand("build", "Load a dataset and write it in native form");
    build->add_option("--data", build_data.data, "Input directory")->required();
    build->add_option("--out", build_out, "Output directory")->required();
    build->add_option("--radius", build_data.radius, "Transfer radius in meters");
    build->add_option("--service", build_data.gtfs.service_id, "GTFS: keep only trips of this service_id");

    // label
    DataArgs label_data;
    std::string label_out, import_in, import_out;
    bool keep_all = false;
    auto *label = app.add_subcommand("label", "Compute (or import) hub labels and save them");
    label->add_option("--data", label_data.data, "Dataset directory")->required();
    label->add_option("--out", label_out, "Label file (default DATA/labels.bin)");
    label->add_option("--import-in", import_in, "Published in-hub file");
    label->add_option("--import-out", import_out, "Published out-hub file");
    label->add_flag("--all-vertices", keep_all, "Keep labels of non-stop vertices");
    label->add_option("--service", label_data.gtfs.service_id, "GTFS: keep only trips of this service_id");

    // query
    DataArgs query_data;
    std::string query_algo = "hlraptor", from_stop, to_stop, at_time = "0";
    int max_rounds = 16;
    auto *query = app.add_subcommand("query", "Earliest arrival or Pareto query");
    add_data_flags(query, query_data);
    query->add_option("--algo", query_algo, "raptor|mcraptor|csa|hlraptor|hlmcraptor|hlcsa|oracle");
    query->add_option("--from", from_stop, "Source stop id")->required();
    query->add_option("--to", to_stop, "Target stop id")->required();
    query->add_option("--time", at_time, "Departure time (seconds or HH:MM:SS)");
    query->add_option("--max-rounds", max_rounds, "Round limit for RAPTOR variants");

    // profile
    DataArgs profile_data;
    std::string profile_algo = "hlprraptor", pfrom, pto, from_time = "0", to_time = "7200";
    auto *profile = app.add_subcommand("profile", "All best journeys over a departure interval");
    add_data_flags(profile, profile_data);
    profile->add_option("--algo", profile_algo, "hlprraptor|hlprcsa|oracle");
    profile->add_option("--from", pfrom, "Source stop id")->required();
    profile->add_option("--to", pto, "Target stop id")->required();
    profile->add_option("--from-time", from_time, "Interval start");
    profile->add_option("--to-time", to_time, "Interval end");
    profile->add_option("--max-rounds", max_rounds, "Round limit");

    // gen
    DataArgs gen_data;
    GenArgs gen_args;
    std::string gen_out;
    auto *gen = app.add_subcommand("gen", "Generate a query file");
    add_data_flags(gen, gen_data);
    add_gen_flags(gen, gen_args, false);
    gen->add_option("--out", gen_out, "Query file (default stdout)");

    // bench
    DataArgs bench_data;
    GenArgs bench_gen;
    std::string bench_algo = "hlraptor", bench_out;
    BenchOptions bench_opts;
    auto *bench = app.add_subcommand("bench", "Time an algorithm on a query set");
    add_data_flags(bench, bench_data);
    add_gen_flags(bench, bench_gen, true);
    bench->add_option("--algo", bench_algo, "Algorithm name");
    bench->add_option("--repetitions", bench_opts.repetitions, "Timed runs per query")->check(CLI::PositiveNumber);
    bench->add_option("--threads", bench_opts.threads, "More than 1: untimed parallel correctness run");
    bench->add_option("--out", bench_out, "Per-query TSV (summary JSON goes to stdout)");

    // gain
    DataArgs gain_data;
    GenArgs gain_gen;
    std::string restricted = "raptor", unrestricted = "hlraptor", gain_out;
    bool daytime = false;
    auto *gain = app.add_subcommand("gain", "Travel time gained by unrestricted walking");
    add_data_flags(gain, gain_data);
    add_gen_flags(gain, gain_gen, true);
    gain->add_option("--restricted", restricted, "Algorithm with the transfer radius");
    gain->add_option("--unrestricted", unrestricted, "Algorithm with the hub labeling");
    gain->add_flag("--daytime", daytime, "Only departures between 06:00 and 20:00");
    gain->add_option("--out", gain_out, "Per-query TSV (summary JSON goes to stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*build) {
            Dataset d = load_dataset(build_data.data, std::nullopt, build_data.radius, build_data.gtfs);
            fs::create_directories(build_out);
            save_native(d.timetable, build_out);
            save_walk_graph_binary(d.graph, fs::path(build_out) / "walk_graph.bin");
            nlohmann::json j;
            j["stops"] = d.timetable.num_stops();
            j["trips"] = d.timetable.num_trips();
            j["routes"] = d.timetable.num_routes();
            j["connections"] = d.timetable.connections().size();
            j["vertices"] = d.graph.num_vertices();
            j["edges"] = d.graph.num_edges();
            j["transfers"] = d.transfers.num_transfers();
            std::cout << j.dump(2) << '\n';
        } else if (*label) {
            Timetable tt = load_timetable(label_data.data, fs::exists(fs::path(label_data.data) / "stop_times.txt")
                                                               ? TimetableFormat::GtfsSubset
                                                               : TimetableFormat::Native,
                                         label_data.gtfs);
            HubLabeling hl;
            if (!import_in.empty() || !import_out.empty()) {
                if (import_in.empty() || import_out.empty()) {
                    throw InputError("--import-in and --import-out go together");
                }
                hl = import_hub_files(import_in, import_out, tt.stops());
            } else {
                WalkGraph g = load_walking_graph(label_data.data, tt);
                hl = build_labeling(g);
                if (!keep_all) hl = hl.restricted_to_stops();
            }
            const fs::path out = label_out.empty() ? fs::path(label_data.data) / "labels.bin" : fs::path(label_out);
            save_labeling(hl, out);
            const LabelStats s = hl.stats();
            nlohmann::json j;
            j["file"] = out.string();
            j["vertices"] = hl.num_vertices();
            j["avg_out"] = s.avg_out;
            j["max_out"] = s.max_out;
            j["avg_in"] = s.avg_in;
            j["max_in"] = s.max_in;
            j["hubs"] = s.num_hubs;
            std::cout << j.dump(2) << '\n';
        } else if (*query) {
            Dataset d = open_dataset(query_data);
            const Timetable &tt = d.timetable;
            const StopId s = stop_arg(tt, from_stop), t = stop_arg(tt, to_stop);
            const Time tau = parse_time(at_time);
            const Algo algo = parse_algo(query_algo);
            RaptorOptions ro;
            ro.max_rounds = max_rounds;
            McOptions mo;
            mo.max_rounds = max_rounds;
            std::optional<Journey> journey;
            Time arrival = kInfinity;
            switch (algo) {
                case Algo::Raptor: {
                    EatResult r = raptor_eat(tt, d.transfers, s, t, tau, ro);
                    arrival = r.arrival;
                    journey = r.journey;
                    break;
                }
                case Algo::HlRaptor: {
                    EatResult r = hlraptor_eat(tt, d.labeling, s, t, tau, ro);
                    arrival = r.arrival;
                    journey = r.journey;
                    break;
                }
                case Algo::Csa: {
                    CsaResult r = csa_eat(tt, d.transfers, s, t, tau);
                    arrival = r.arrival;
                    journey = r.journey;
                    break;
                }
                case Algo::HlCsa: {
                    CsaResult r = hlcsa_eat(tt, d.labeling, s, t, tau);
                    arrival = r.arrival;
                    journey = r.journey;
                    break;
                }
                case Algo::Oracle:
                    arrival = oracle_eat(tt, d.graph, s, t, tau);
                    break;
                case Algo::McRaptor:
                case Algo::HlMcRaptor: {
                    McResult r = algo == Algo::McRaptor ? mc_raptor(tt, d.transfers, s, t, tau, mo)
                                                        : hlmc_raptor(tt, d.labeling, s, t, tau, mo);
                    print_pareto(r.frontier);
                    for (const Journey &j : r.journeys) std::cout << '\n' << describe(j, tt);
                    return 0;
                }
                default:
                    throw InputError("'" + query_algo + "' is a profile algorithm; use the profile command");
            }
            if (!reachable(arrival)) {
                std::cout << "unreachable\n";
            } else {
                std::cout << "arrival " << format_time(arrival) << " (" << arrival << ")\n";
                print_journey(journey, tt);
            }
        } else if (*profile) {
            Dataset d = open_dataset(profile_data);
            const StopId s = stop_arg(d.timetable, pfrom), t = stop_arg(d.timetable, pto);
            const Time a = parse_time(from_time), b = parse_time(to_time);
            ProfileResult p;
            if (profile_algo == "hlprraptor") {
                ProfileOptions o;
                o.max_rounds = max_rounds;
                p = hlpr_raptor(d.timetable, d.labeling, s, t, a, b, o);
            } else if (profile_algo == "hlprcsa") {
                p = hlpr_csa(d.timetable, d.labeling, s, t, a, b);
            } else if (profile_algo == "oracle") {
                p = oracle_profile(d.timetable, d.graph, s, t, a, b);
            } else {
                throw InputError("unknown profile algorithm '" + profile_algo + "'");
            }
            for (const ProfileEntry &e : p.entries) {
                std::cout << "depart " << format_time(e.dep) << " (" << e.dep << ")  arrive " << format_time(e.arr)
                          << " (" << e.arr << ")\n";
            }
            if (reachable(p.walk_duration)) std::cout << "walk " << p.walk_duration << " s\n";
            if (p.entries.empty() && !reachable(p.walk_duration)) std::cout << "unreachable\n";
        } else if (*gen) {
            Dataset d = open_dataset(gen_data);
            Sink sink(gen_out);
            write_queries(sink.get(), queries_for(d, gen_args), d.timetable);
        } else if (*bench) {
            Dataset d = open_dataset(bench_data);
            BenchResult r = run_bench(d, queries_for(d, bench_gen), parse_algo(bench_algo), bench_opts);
            if (!bench_out.empty()) {
                Sink sink(bench_out);
                write_bench_tsv(sink.get(), r, d.timetable);
            }
            std::cout << bench_summary_json(r) << '\n';
        } else if (*gain) {
            Dataset d = open_dataset(gain_data);
            GainOptions o;
            o.daytime_only = daytime;
            GainReport r = gain_report(d, queries_for(d, gain_gen), parse_algo(restricted), parse_algo(unrestricted), o);
            if (!gain_out.empty()) {
                Sink sink(gain_out);
                sink.get() << "source\ttarget\tdep\trestricted\tunrestricted\tgain\n";
                for (const GainRow &row : r.rows) {
                    sink.get() << d.timetable.stop(row.query.source).external_id << '\t'
                               << d.timetable.stop(row.query.target).external_id << '\t' << row.query.dep << '\t'
                               << row.restricted << '\t' << row.unrestricted << '\t' << row.gain << '\n';
                }
            }
            std::cout << gain_summary_json(r) << '\n';
        }
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
