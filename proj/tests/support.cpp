#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace test_support {

WalkGraph random_graph(std::mt19937_64 &rng, std::size_t n, double avg_out_degree, Time max_weight,
                       bool connected, std::size_t num_stops) {
    std::uniform_int_distribution<VertexId> vertex(0, static_cast<VertexId>(n - 1));
    std::uniform_int_distribution<Time> weight(1, max_weight);
    std::vector<WalkEdge> edges;
    if (connected && n > 1) {
        std::vector<VertexId> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 1; i < n; ++i) {
            const VertexId a = perm[std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)];
            edges.push_back({a, perm[i], weight(rng)});
            edges.push_back({perm[i], a, weight(rng)});
        }
    }
    const std::size_t extra = static_cast<std::size_t>(avg_out_degree * static_cast<double>(n));
    for (std::size_t i = 0; i < extra; ++i) {
        const VertexId a = vertex(rng), b = vertex(rng);
        if (a != b) edges.push_back({a, b, weight(rng)});
    }
    return WalkGraph(n, num_stops ? num_stops : n, std::move(edges));
}

std::vector<Time> bellman_ford(const WalkGraph &g, VertexId source) {
    std::vector<Time> d(g.num_vertices(), kInfinity);
    d[source] = 0;
    for (std::size_t round = 0; round + 1 < g.num_vertices(); ++round) {
        bool changed = false;
        for (const WalkEdge &e : g.edges()) {
            if (reachable(d[e.tail]) && d[e.tail] + e.weight < d[e.head]) {
                d[e.head] = d[e.tail] + e.weight;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return d;
}

RandomInstanceOptions suite_options(std::uint64_t i) {
    std::mt19937_64 rng(0x5eed0000 + i);
    auto pick = [&](std::int64_t lo, std::int64_t hi) {
        return static_cast<std::size_t>(std::uniform_int_distribution<std::int64_t>(lo, hi)(rng));
    };
    RandomInstanceOptions o;
    o.stops = pick(3, 40);
    o.extra_vertices = pick(0, 10);
    o.lines = pick(1, 8);
    o.trips_per_line = pick(1, 20);
    o.max_line_length = pick(2, 8);
    o.edge_density = std::uniform_real_distribution<double>(0.02, 0.3)(rng);
    o.min_transfer_chance = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
    o.horizon = static_cast<Time>(pick(600, 4 * 3600));
    o.asymmetric = i % 3 != 0;
    return o;
}

Dataset suite_instance(std::uint64_t i) { return random_instance(1000 + i, suite_options(i)); }

Dataset tiny_instance(std::uint64_t i) {
    std::mt19937_64 rng(0x7111 + i);
    auto pick = [&](std::int64_t lo, std::int64_t hi) {
        return static_cast<std::size_t>(std::uniform_int_distribution<std::int64_t>(lo, hi)(rng));
    };
    RandomInstanceOptions o;
    o.stops = pick(3, 10);
    o.extra_vertices = pick(0, 4);
    o.lines = pick(1, 4);
    o.trips_per_line = pick(1, 5);
    o.max_line_length = pick(2, 5);
    o.edge_density = std::uniform_real_distribution<double>(0.1, 0.4)(rng);
    o.min_transfer_chance = 0.3;
    o.horizon = static_cast<Time>(pick(300, 3600));
    return random_instance(5000 + i, o);
}

std::vector<QuerySpec> suite_queries(const Dataset &d, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto &conns = d.timetable.connections();
    Time last = 0;
    for (const Connection &c : conns) last = std::max(last, c.dep_time);
    std::uniform_int_distribution<StopId> stop(0, static_cast<StopId>(d.timetable.num_stops() - 1));
    std::uniform_int_distribution<Time> time(0, last + 60);
    std::vector<QuerySpec> out;
    for (std::size_t i = 0; i < n; ++i) {
        QuerySpec q;
        q.source = stop(rng);
        q.target = stop(rng);
        q.dep = time(rng);
        q.dep_to = q.dep + 7200;
        out.push_back(q);
    }
    return out;
}

std::string show(const std::vector<ProfileEntry> &v) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << '(' << v[i].dep << ',' << v[i].arr << ')';
    out << '}';
    return out.str();
}

std::string show(const std::vector<McValue> &v) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < v.size(); ++i) {
        out << (i ? " " : "") << '(' << v[i].arrival << ',' << v[i].trips << ',' << v[i].walk << ')';
    }
    out << '}';
    return out.str();
}

std::string show(const std::vector<Time> &v) {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        out << (i ? " " : "");
        if (reachable(v[i])) out << v[i];
        else out << "inf";
    }
    out << ']';
    return out.str();
}

std::filesystem::path temp_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("transit_hl_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace test_support
