// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "support.hpp"
#include "transit_hl/bench.hpp"
#include "transit_hl/csa.hpp"
#include "transit_hl/hl_raptor.hpp"
#include "transit_hl/hub_labeling.hpp"
#include "transit_hl/oracle.hpp"
#include "transit_hl/raptor.hpp"

using namespace transit_hl;
using test_support::show;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::string failures;
    int reported = 0;
    // Records a mismatch; only the first few are described.
    void fail(const std::string &what) {
        pass = false;
        if (reported++ < 3) failures += " | " + what;
    }
};

constexpr std::size_t kSuiteSize = 200;
constexpr std::size_t kQueriesPerInstance = 25;

OracleOptions quiet() {
    OracleOptions o;
    o.warn_if_large = false;
    return o;
}

std::string where(std::size_t inst, const QuerySpec &q) {
    std::ostringstream out;
    out << "instance " << inst << " " << q.source << "->" << q.target << " @" << q.dep;
    return out.str();
}

// 1. Hub labels reproduce Dijkstra for every ordered pair.
void hub_cover(Outcome &out) {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);
    std::size_t pairs = 0, unreachable = 0;
    const int graphs = 20;
    for (int i = 0; i < graphs; ++i) {
        const std::size_t n = 50 + static_cast<std::size_t>(450 * i / (graphs - 1));
        const double degree = 1.0 + (i % 4);
        const bool connected = i % 3 != 2;
        const Time max_w = i % 2 ? 10 : 1000;
        WalkGraph g = test_support::random_graph(rng, n, degree, max_w, connected);
        HubLabeling hl = build_labeling(g);
        for (VertexId u = 0; u < n; ++u) {
            const std::vector<Time> d = dijkstra(g, u);
            for (VertexId v = 0; v < n; ++v) {
                ++pairs;
                unreachable += !reachable(d[v]);
                const Time q = hl.query(u, v);
                if (q != d[v]) {
                    out.fail("graph " + std::to_string(i) + " pair " + std::to_string(u) + "->" +
                             std::to_string(v) + ": label " + std::to_string(q) + ", dijkstra " +
                             std::to_string(d[v]));
                }
            }
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 60) out.fail("took " + std::to_string(secs) + " s");
    out.detail << graphs << " graphs (50-500 vertices), " << pairs << " ordered pairs (" << unreachable
               << " unreachable), " << secs << " s";
}

// 2. HLRaptor round arrivals equal RAPTOR on the full walking closure.
// 3. HLRaptor = HLCSA = oracle final arrivals.
void closure_and_agreement(Outcome &c2, Outcome &c3) {
    std::size_t queries = 0, reached = 0, max_stops = 0, max_trips = 0;
    for (std::size_t i = 0; i < kSuiteSize; ++i) {
        const Dataset d = test_support::suite_instance(i);
        max_stops = std::max(max_stops, d.timetable.num_stops());
        max_trips = std::max(max_trips, d.timetable.num_trips());
        const TransferGraph closure = full_transfer_closure(d.graph);
        const TransitOracle oracle(d.timetable, d.graph, quiet());
        HlRaptorRouter hlr(d.timetable, d.labeling);
        HlCsaRouter hlc(d.timetable, d.labeling);
        for (const QuerySpec &q : test_support::suite_queries(d, kQueriesPerInstance, 31 * i + 7)) {
            ++queries;
            RaptorOptions ro;
            ro.build_journey = false;
            const EatResult base = raptor_eat(d.timetable, closure, q.source, q.target, q.dep, ro);
            const EatResult hl = hlr.eat(q.source, q.target, q.dep, ro);
            if (base.round_arrivals != hl.round_arrivals) {
                c2.fail(where(i, q) + ": raptor " + show(base.round_arrivals) + " hlraptor " +
                        show(hl.round_arrivals));
            }
            CsaOptions co;
            co.build_journey = false;
            const Time csa = hlc.eat(q.source, q.target, q.dep, co).arrival;
            const Time ref = oracle.eat(q.source, q.target, q.dep);
            reached += reachable(ref);
            if (hl.arrival != csa || csa != ref) {
                c3.fail(where(i, q) + ": hlraptor " + std::to_string(hl.arrival) + " hlcsa " +
                        std::to_string(csa) + " oracle " + std::to_string(ref));
            }
        }
    }
    if (max_stops > 50 || max_trips > 200) c2.fail("suite exceeds 50 stops / 200 trips");
    c2.detail << kSuiteSize << " instances (max " << max_stops << " stops, " << max_trips << " trips), "
              << queries << " queries, every round compared";
    c3.detail << kSuiteSize << " instances, " << queries << " queries, " << reached << " reachable";
}

// 4. Profiles against the per-second oracle sweep over 2-hour intervals.
void profiles(Outcome &out) {
    const std::size_t instances = 60, per_instance = 8;
    std::size_t queries = 0, entries = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        const Dataset d = test_support::suite_instance(i);
        const TransitOracle oracle(d.timetable, d.graph, quiet());
        HlRaptorRouter hlr(d.timetable, d.labeling);
        HlCsaRouter hlc(d.timetable, d.labeling);
        for (QuerySpec q : test_support::suite_queries(d, per_instance, 1000 + i)) {
            q.dep_to = q.dep + 7200;
            ++queries;
            const ProfileResult ref = oracle.profile(q.source, q.target, q.dep, q.dep_to, SweepMode::EverySecond);
            const ProfileResult pr = hlr.profile(q.source, q.target, q.dep, q.dep_to);
            const ProfileResult pc = hlc.profile(q.source, q.target, q.dep, q.dep_to);
            entries += ref.entries.size();
            if (pr.entries != ref.entries) {
                out.fail(where(i, q) + ": hlprraptor " + show(pr.entries) + " oracle " + show(ref.entries));
            }
            if (pc.entries != ref.entries) {
                out.fail(where(i, q) + ": hlprcsa " + show(pc.entries) + " oracle " + show(ref.entries));
            }
        }
    }
    out.detail << instances << " instances, " << queries << " two-hour profiles, " << entries
               << " oracle entries, per-second sweep";
}

// 5. HLmcRaptor bags against exhaustive enumeration.
void pareto(Outcome &out) {
    const std::size_t instances = 120;
    std::size_t compared = 0, multi = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        const Dataset d = test_support::tiny_instance(i);
        if (d.timetable.num_stops() > 10) out.fail("tiny instance with more than 10 stops");
        const TransitOracle oracle(d.timetable, d.graph, quiet());
        for (const QuerySpec &q : test_support::suite_queries(d, 6, 500 + i)) {
            McOptions mo;
            mo.max_rounds = 3;
            const McResult r = hlmc_raptor(d.timetable, d.labeling, q.source, q.target, q.dep, mo);
            for (int k = 0; k <= 3; ++k) {
                ++compared;
                const std::vector<McValue> ref = oracle.pareto(q.source, q.target, q.dep, k);
                multi += ref.size() > 1;
                // bag of round k: journeys with at most k trips
                mo.max_rounds = k;
                const std::vector<McValue> got =
                    hlmc_raptor(d.timetable, d.labeling, q.source, q.target, q.dep, mo).frontier;
                if (got != ref) {
                    out.fail(where(i, q) + " k=" + std::to_string(k) + ": hlmcraptor " + show(got) +
                             " oracle " + show(ref));
                }
                // the per-round bags of the 3-round run agree on (arrival, walk)
                std::set<std::pair<Time, Time>> want, have;
                for (const McValue &v : ref) want.emplace(v.arrival, v.walk);
                for (const McValue &v : r.round_bags[k]) have.emplace(v.arrival, v.walk);
                std::set<std::pair<Time, Time>> front;
                for (auto [a, w] : want) {
                    bool dominated = false;
                    for (auto [a2, w2] : want) dominated |= (a2 <= a && w2 <= w && (a2 != a || w2 != w));
                    if (!dominated) front.emplace(a, w);
                }
                if (front != have) out.fail(where(i, q) + " round bag " + std::to_string(k) + " differs");
            }
        }
    }
    out.detail << instances << " instances (<= 10 stops), " << compared << " frontiers for 0-3 rounds, "
               << multi << " with several Pareto journeys";
}

// 6. Toggling the pruning rules never changes results.
void neutrality(Outcome &out) {
    std::size_t checks = 0;
    for (std::size_t i = 0; i < kSuiteSize; ++i) {
        const Dataset d = test_support::suite_instance(i);
        HlRaptorRouter hlr(d.timetable, d.labeling);
        HlCsaRouter hlc(d.timetable, d.labeling);
        for (const QuerySpec &q : test_support::suite_queries(d, 10, 77 * i + 3)) {
            RaptorOptions on, off;
            on.build_journey = off.build_journey = false;
            off.target_pruning = false;
            const EatResult a = hlr.eat(q.source, q.target, q.dep, on);
            const EatResult b = hlr.eat(q.source, q.target, q.dep, off);
            if (a.round_arrivals != b.round_arrivals) out.fail(where(i, q) + ": hlraptor target pruning");
            const Time ra = raptor_eat(d.timetable, d.transfers, q.source, q.target, q.dep, on).arrival;
            const Time rb = raptor_eat(d.timetable, d.transfers, q.source, q.target, q.dep, off).arrival;
            if (ra != rb) out.fail(where(i, q) + ": raptor target pruning");

            Time first = kInfinity;
            for (int mask = 0; mask < 16; ++mask) {
                CsaOptions co;
                co.build_journey = false;
                co.target_pruning = mask & 1;
                co.local_pruning = mask & 2;
                co.boarded_skip = mask & 4;
                co.stop_early = mask & 8;
                const Time t = hlc.eat(q.source, q.target, q.dep, co).arrival;
                if (mask == 0) first = t;
                if (t != first) out.fail(where(i, q) + ": hlcsa options " + std::to_string(mask));
                const Time c = csa_eat(d.timetable, d.transfers, q.source, q.target, q.dep, co).arrival;
                if (c != ra) out.fail(where(i, q) + ": csa options " + std::to_string(mask));
                ++checks;
            }
            if (first != a.arrival) out.fail(where(i, q) + ": hlcsa vs hlraptor");

            McOptions mon, moff;
            mon.max_rounds = moff.max_rounds = 4;
            moff.target_pruning = false;
            if (hlmc_raptor(d.timetable, d.labeling, q.source, q.target, q.dep, mon).frontier !=
                hlmc_raptor(d.timetable, d.labeling, q.source, q.target, q.dep, moff).frontier) {
                out.fail(where(i, q) + ": hlmcraptor target pruning");
            }
            if (i < 60) {
                ProfileOptions pon, poff;
                poff.target_pruning = false;
                CsaProfileOptions bon, boff;
                boff.bound_scan = false;
                const auto p1 = hlr.profile(q.source, q.target, q.dep, q.dep_to, pon);
                const auto p2 = hlr.profile(q.source, q.target, q.dep, q.dep_to, poff);
                const auto p3 = hlc.profile(q.source, q.target, q.dep, q.dep_to, bon);
                const auto p4 = hlc.profile(q.source, q.target, q.dep, q.dep_to, boff);
                if (!(p1 == p2) || !(p3 == p4) || !(p1 == p3)) out.fail(where(i, q) + ": profile options");
            }
        }
    }
    out.detail << kSuiteSize << " instances, " << checks
               << " HLCSA/CSA option combinations, plus target pruning for RAPTOR, HLRaptor, HLmcRaptor and profiles";
}

// 7. Unrestricted walking gains travel time on the T2 fixture.
void gain(Outcome &out) {
    const Dataset t2 = fixture_t2();
    std::vector<QuerySpec> queries;
    for (StopId s = 0; s < t2.timetable.num_stops(); ++s) {
        for (StopId t = 0; t < t2.timetable.num_stops(); ++t) {
            for (Time dep = 0; dep <= 400; dep += 10) queries.push_back(QuerySpec{s, t, dep, dep, -1});
        }
    }
    const GainReport r = gain_report(t2, queries, Algo::Raptor, Algo::HlRaptor);
    const GainReport single = gain_report(t2, {QuerySpec{0, 3, 0, 0, -1}}, Algo::Raptor, Algo::HlRaptor);
    if (!(r.average > 0)) out.fail("average gain not positive");
    if (single.rows.size() != 1 || single.rows[0].gain != 0.375) out.fail("A->D at 0 should gain 150/400");
    for (const GainRow &row : r.rows) {
        if (row.gain < 0 || row.gain > 1) out.fail("gain outside [0, 1]");
    }
    out.detail << "T2, " << queries.size() << " queries (all pairs, departures 0-400 s): average gain "
               << r.average << ", median " << r.median << ", " << r.unreachable_restricted
               << " reachable only without restriction; A->D at 0: "
               << (single.rows.empty() ? -1.0 : single.rows[0].gain)
               << "; no real feed is bundled (see README for rerunning on one)";
}

// 8. Per-round hub work of HLRaptor stays within the improved nodes' list lengths.
void work_bound(Outcome &out) {
    std::size_t rounds = 0, scanned = 0, bound = 0, label_total = 0;
    for (std::size_t i = 0; i < kSuiteSize; ++i) {
        const Dataset d = test_support::suite_instance(i);
        const HubLabeling &hl = d.labeling;
        for (StopId u = 0; u < hl.num_stops(); ++u) label_total += hl.out(u).size();
        for (const QuerySpec &q : test_support::suite_queries(d, 10, 13 * i + 5)) {
            for (bool pruning : {true, false}) {
                RaptorOptions o;
                o.record_all_stops = true;
                o.build_journey = false;
                o.target_pruning = pruning;
                const EatResult r = hlraptor_eat(d.timetable, hl, q.source, q.target, q.dep, o);
                for (std::size_t k = 0; k < r.rounds.size(); ++k) {
                    // stops whose label improved in round k, hubs they list
                    std::set<VertexId> hubs;
                    std::size_t limit = 0;
                    for (StopId u = 0; u < d.timetable.num_stops(); ++u) {
                        const bool improved = k == 0 ? u == q.source
                                                     : r.stop_arrivals[k][u] < r.stop_arrivals[k - 1][u];
                        if (!improved) continue;
                        limit += hl.out(u).size();
                        for (const HubEntry &e : hl.out(u)) hubs.insert(e.node);
                    }
                    for (VertexId h : hubs) limit += hl.in_inv(h).size();
                    const std::size_t used = r.rounds[k].hub_entries_scanned;
                    if (used > limit) {
                        out.fail(where(i, q) + " round " + std::to_string(k) + ": scanned " +
                                 std::to_string(used) + " > " + std::to_string(limit));
                    }
                    ++rounds;
                    scanned += used;
                    bound += limit;
                }
            }
        }
    }
    // the same counters as exported by the bench harness
    const Dataset d = test_support::suite_instance(0);
    const BenchResult b = run_bench(d, test_support::suite_queries(d, 20, 99), Algo::HlRaptor, {1, 1});
    if (b.hub_entries_scanned > b.hub_entries_bound) out.fail("bench counter exceeds its bound");
    out.detail << rounds << " rounds, hub entries scanned " << scanned << " <= bound " << bound
               << " (ratio " << (bound ? static_cast<double>(scanned) / bound : 0.0)
               << "); bench harness on instance 0: " << b.hub_entries_scanned << " <= " << b.hub_entries_bound;
}

}  // namespace

int main() {
    struct Row {
        int id;
        const char *name;
        Outcome outcome;
    };
    Row rows[] = {
        {1, "hub-cover exactness", {}},   {2, "closure equivalence", {}},
        {3, "cross-algorithm agreement", {}}, {4, "profile correctness", {}},
        {5, "multi-criteria correctness", {}}, {6, "optimization neutrality", {}},
        {7, "gain on T2", {}},            {8, "hub work bound", {}},
    };
    auto guarded = [](Outcome &o, const std::function<void()> &f) {
        try {
            f();
        } catch (const std::exception &e) {
            o.fail(std::string("exception: ") + e.what());
        }
    };
    guarded(rows[0].outcome, [&] { hub_cover(rows[0].outcome); });
    guarded(rows[1].outcome, [&] { closure_and_agreement(rows[1].outcome, rows[2].outcome); });
    guarded(rows[3].outcome, [&] { profiles(rows[3].outcome); });
    guarded(rows[4].outcome, [&] { pareto(rows[4].outcome); });
    guarded(rows[5].outcome, [&] { neutrality(rows[5].outcome); });
    guarded(rows[6].outcome, [&] { gain(rows[6].outcome); });
    guarded(rows[7].outcome, [&] { work_bound(rows[7].outcome); });

    bool all = true;
    for (Row &r : rows) {
        all &= r.outcome.pass;
        std::cout << (r.outcome.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name
                  << "): " << r.outcome.detail.str() << r.outcome.failures;
        if (r.outcome.reported > 3) std::cout << " | ... " << r.outcome.reported << " mismatches";
        std::cout << '\n';
    }
    return all ? 0 : 1;
}
