#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "support.hpp"
#include "transit_hl/walk_graph.hpp"

using namespace transit_hl;

namespace {

Stop located(StopId id, double lat, double lon) {
    Stop s;
    s.id = id;
    s.external_id = "p" + std::to_string(id);
    s.lat = lat;
    s.lon = lon;
    return s;
}

// Meters north of (lat0, lon) expressed in degrees.
constexpr double kMetersPerDegree = 6371000.0 * 3.14159265358979323846 / 180.0;
double north(double meters) { return meters / kMetersPerDegree; }

}  // namespace

TEST(Dijkstra, ZeroCutoffKeepsSource) {
    WalkGraph g = transit_hl::fixture_t1().graph;
    DijkstraSource src{0, 7};
    auto d = dijkstra(g, std::span(&src, 1), Direction::Forward, 0);
    EXPECT_EQ(d[0], kInfinity);  // offset 7 is already beyond cutoff 0
    auto d0 = dijkstra(g, 0, Direction::Forward, 0);
    EXPECT_EQ(d0[0], 0);
    for (VertexId v = 1; v < g.num_vertices(); ++v) EXPECT_EQ(d0[v], kInfinity);
}

TEST(Dijkstra, T1GoesThroughX) {
    WalkGraph g = transit_hl::fixture_t1().graph;
    auto d = dijkstra(g, 0);
    EXPECT_EQ(d[2], 120);  // A -> X -> C
    EXPECT_EQ(d[1], 150);  // ... -> B
    EXPECT_EQ(d[3], kInfinity);
    EXPECT_EQ(shortest_path(g, 0, 2), (std::vector<VertexId>{0, 4, 2}));
    EXPECT_TRUE(shortest_path(g, 0, 3).empty());
}

TEST(Dijkstra, BackwardIsForwardOnReverse) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        WalkGraph g = test_support::random_graph(rng, 40, 2.0, 50, false);
        WalkGraph r = g.reversed();
        for (VertexId v = 0; v < 40; v += 7) {
            EXPECT_EQ(dijkstra(g, v, Direction::Backward), dijkstra(r, v, Direction::Forward));
        }
    }
}

TEST(Dijkstra, MatchesBellmanFord) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        const std::size_t n = 20 + 6 * static_cast<std::size_t>(i);
        WalkGraph g = test_support::random_graph(rng, n, 2.5, i % 2 ? 5 : 500, i % 3 == 0);
        for (VertexId s = 0; s < n; s += 13) EXPECT_EQ(dijkstra(g, s), test_support::bellman_ford(g, s));
    }
}

TEST(Dijkstra, MultiSourceOffsets) {
    WalkGraph g = transit_hl::fixture_t1().graph;
    std::vector<DijkstraSource> src = {{0, 100}, {1, 0}};
    auto d = dijkstra(g, src);
    EXPECT_EQ(d[2], 30);
    EXPECT_EQ(d[4], 90);
    EXPECT_EQ(d[0], 100);
}

TEST(Walking, SpeedAndRounding) {
    EXPECT_EQ(walking_seconds(40.0), 36);
    EXPECT_EQ(walking_seconds(40.5), 37);
    EXPECT_EQ(walking_seconds(0.0), 1);
    EXPECT_NEAR(haversine_meters({0, 0}, {1, 0}), kMetersPerDegree, 1e-6);
}

TEST(Embed, IdentifiesCloseStop) {
    std::vector<WalkEdge> edges = {{0, 1, 50}, {1, 0, 50}};
    WalkGraph ped(2, 0, edges, {Coordinate{10, 10}, Coordinate{10 + north(60), 10}});
    std::vector<Stop> stops = {located(0, 10 + north(3), 10)};
    EmbeddedGraph e = embed_stops(ped, stops);
    EXPECT_EQ(e.attachment[0], StopAttachment::Identified);
    EXPECT_EQ(e.graph.num_vertices(), 2u);
    EXPECT_EQ(e.vertex_map[0], 0u);
    EXPECT_EQ(e.graph.num_edges(), 2u);  // no new edges
    EXPECT_EQ(dijkstra(e.graph, 0)[e.vertex_map[1]], 50);
}

TEST(Embed, FarStopIsIsolated) {
    WalkGraph ped(1, 0, {}, {Coordinate{10, 10}});
    std::vector<Stop> stops = {located(0, 10 + north(150), 10)};
    EmbeddedGraph e = embed_stops(ped, stops);
    EXPECT_EQ(e.attachment[0], StopAttachment::Isolated);
    EXPECT_TRUE(e.graph.out_arcs(0).empty());
    EXPECT_TRUE(e.graph.in_arcs(0).empty());
}

TEST(Embed, LinksAtWalkingSpeed) {
    // two vertices 40 m north and 40 m south of the stop
    WalkGraph ped(3, 0, {}, {Coordinate{10 + north(40), 10}, Coordinate{10 - north(40), 10}, Coordinate{11, 11}});
    std::vector<Stop> stops = {located(0, 10, 10)};
    EmbeddedGraph e = embed_stops(ped, stops);
    EXPECT_EQ(e.attachment[0], StopAttachment::Linked);
    EXPECT_EQ(e.graph.out_arcs(0).size(), 2u);
    EXPECT_EQ(e.graph.in_arcs(0).size(), 2u);
    for (const Arc &a : e.graph.out_arcs(0)) {
        const double m = haversine_meters(*e.graph.coordinate(0), *e.graph.coordinate(a.head));
        EXPECT_EQ(a.weight, static_cast<Time>(std::ceil(m / (4000.0 / 3600.0) - 1e-9)));
        EXPECT_EQ(a.weight, 36);
    }
}

TEST(Embed, AtMostFiveNearest) {
    std::vector<std::optional<Coordinate>> coords;
    for (int i = 1; i <= 8; ++i) coords.push_back(Coordinate{10 + north(10.0 * i), 10});
    WalkGraph ped(8, 0, {}, coords);
    EmbeddedGraph e = embed_stops(ped, std::vector<Stop>{located(0, 10, 10)});
    ASSERT_EQ(e.graph.out_arcs(0).size(), 5u);
    std::vector<Time> w;
    for (const Arc &a : e.graph.out_arcs(0)) w.push_back(a.weight);
    std::sort(w.begin(), w.end());
    EXPECT_EQ(w.back(), walking_seconds(50.0));
}

TEST(Embed, MissingCoordinatesRejected) {
    WalkGraph ped(1, 0, {}, {Coordinate{10, 10}});
    Stop s;
    s.id = 0;
    EXPECT_THROW(embed_stops(ped, std::vector<Stop>{s}), InputError);
}

TEST(Embed, NeverLengthensExistingDistances) {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 10; ++round) {
        const std::size_t n = 30;
        std::vector<std::optional<Coordinate>> coords;
        std::uniform_real_distribution<double> off(0, north(400));
        for (std::size_t v = 0; v < n; ++v) coords.push_back(Coordinate{10 + off(rng), 10 + off(rng)});
        std::vector<WalkEdge> edges;
        for (VertexId v = 0; v + 1 < n; ++v) {
            Time w = walking_seconds(haversine_meters(*coords[v], *coords[v + 1]));
            edges.push_back({v, v + 1, w});
            edges.push_back({v + 1, v, w});
        }
        WalkGraph ped(n, 0, edges, coords);
        std::vector<Stop> stops;
        for (StopId s = 0; s < 6; ++s) stops.push_back(located(s, 10 + off(rng), 10 + off(rng)));
        EmbeddedGraph e = embed_stops(ped, stops);
        for (VertexId a = 0; a < n; a += 3) {
            auto before = dijkstra(ped, a);
            auto after = dijkstra(e.graph, e.vertex_map[a]);
            for (VertexId b = 0; b < n; ++b) {
                if (reachable(before[b])) EXPECT_LE(after[e.vertex_map[b]], before[b]);
            }
        }
    }
}

TEST(Transfers, SmallRadiusGivesNothing) {
    WalkGraph g = transit_hl::fixture_t1().graph;
    TransferGraph tg = build_transfer_graph(g, 10.0);
    EXPECT_EQ(tg.num_transfers(), 0u);
}

TEST(Transfers, T1Radius) {
    TransferGraph tg = build_transfer_graph(transit_hl::fixture_t1().graph, 75.0);
    EXPECT_EQ(tg.duration(1, 2), 30);
    EXPECT_EQ(tg.duration(2, 1), 30);
    EXPECT_FALSE(tg.duration(0, 2).has_value());  // 120 s is beyond 67.5 s
    EXPECT_EQ(tg.num_transfers(), 2u);
}

TEST(Transfers, ChainsAreClosed) {
    // P - Q - R, 50 m apart: P-R is 100 m but reachable by two links
    const Time w = walking_seconds(50.0);
    WalkGraph g(3, 3, {{0, 1, w}, {1, 0, w}, {1, 2, w}, {2, 1, w}});
    TransferGraph tg = build_transfer_graph(g, 75.0);
    EXPECT_EQ(tg.duration(0, 2), 2 * w);
    EXPECT_EQ(tg.duration(2, 0), 2 * w);
}

TEST(Transfers, ClosureProperties) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 25; ++i) {
        WalkGraph g = test_support::random_graph(rng, 40, 2.0, 60, false, 25);
        TransferGraph tg = build_transfer_graph_seconds(g, 70);
        // reference: all-pairs Dijkstra over the link graph
        std::vector<WalkEdge> links;
        for (StopId a = 0; a < 25; ++a) {
            auto d = dijkstra(g, a, Direction::Forward, 70);
            for (StopId b = 0; b < 25; ++b) {
                if (a != b && reachable(d[b])) links.push_back({a, b, d[b]});
            }
        }
        WalkGraph link_graph(25, 25, links);
        for (StopId a = 0; a < 25; ++a) {
            auto d = dijkstra(link_graph, a);
            for (StopId b = 0; b < 25; ++b) {
                const auto got = tg.duration(a, b);
                if (a == b || !reachable(d[b])) {
                    EXPECT_FALSE(got.has_value() && a != b);
                } else {
                    EXPECT_EQ(got, d[b]);
                }
            }
            auto list = tg.from(a);
            EXPECT_TRUE(std::is_sorted(list.begin(), list.end(),
                                       [](const Transfer &x, const Transfer &y) { return x.duration < y.duration; }));
        }
        // (a,b), (b,c) present implies (a,c) no longer than their sum
        for (StopId a = 0; a < 25; ++a) {
            for (const Transfer &ab : tg.from(a)) {
                for (const Transfer &bc : tg.from(ab.to)) {
                    if (bc.to == a) continue;
                    auto ac = tg.duration(a, bc.to);
                    ASSERT_TRUE(ac.has_value());
                    EXPECT_LE(*ac, ab.duration + bc.duration);
                }
            }
        }
        // closing the closure again changes nothing
        std::vector<WalkEdge> closed;
        for (StopId a = 0; a < 25; ++a) {
            for (const Transfer &t : tg.from(a)) closed.push_back({a, t.to, t.duration});
        }
        EXPECT_EQ(full_transfer_closure(WalkGraph(25, 25, closed)), tg);
    }
}

TEST(WalkGraphIo, TextRoundTrip) {
    WalkGraph g = transit_hl::fixture_t1().graph;
    auto dir = test_support::temp_dir("walk_text");
    save_walk_graph_text(g, dir / "e.tsv", dir / "c.tsv");
    WalkGraph back = load_walk_graph_text(dir / "e.tsv", dir / "c.tsv", 4);
    EXPECT_EQ(back, g);
}

TEST(WalkGraphIo, BinaryRoundTrip) {
    std::mt19937_64 rng(2);
    WalkGraph g = test_support::random_graph(rng, 60, 3.0, 100, true, 20);
    auto dir = test_support::temp_dir("walk_bin");
    save_walk_graph_binary(g, dir / "g.bin");
    EXPECT_EQ(load_walk_graph_binary(dir / "g.bin"), g);
    std::filesystem::resize_file(dir / "g.bin", 30);
    EXPECT_THROW(load_walk_graph_binary(dir / "g.bin"), CorruptFileError);
}

TEST(WalkGraphIo, BadWeightRejected) {
    auto dir = test_support::temp_dir("walk_bad");
    {
        std::ofstream out(dir / "e.tsv");
        out << "0 1 5\n1 0 0\n";
    }
    EXPECT_THROW(load_walk_graph_text(dir / "e.tsv", std::nullopt, 2), ParseError);
}
