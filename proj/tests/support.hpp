#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "transit_hl/bench.hpp"
#include "transit_hl/profile.hpp"
#include "transit_hl/raptor.hpp"
#include "transit_hl/walk_graph.hpp"

namespace test_support {

using namespace transit_hl;

// Random digraph on n vertices (all counted as stops unless num_stops says
// otherwise), weights in [1, max_weight]. A random spanning structure is
// only added when `connected` is set, so unreachable pairs do occur.
WalkGraph random_graph(std::mt19937_64 &rng, std::size_t n, double avg_out_degree, Time max_weight,
                       bool connected, std::size_t num_stops = 0);

// Textbook Bellman-Ford, for checking Dijkstra.
std::vector<Time> bellman_ford(const WalkGraph &g, VertexId source);

// Instance i of the shared random suite (varied sizes, <= 50 stops,
// <= 200 trips).
RandomInstanceOptions suite_options(std::uint64_t i);
Dataset suite_instance(std::uint64_t i);
// Smaller instances for exhaustive Pareto enumeration (<= 10 stops).
Dataset tiny_instance(std::uint64_t i);

// Queries for an instance: random pairs and departures near its service.
std::vector<QuerySpec> suite_queries(const Dataset &d, std::size_t n, std::uint64_t seed);

std::string show(const std::vector<ProfileEntry> &v);
std::string show(const std::vector<McValue> &v);
std::string show(const std::vector<Time> &v);

// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string &name);

}  // namespace test_support
