#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "transit_hl/common.hpp"
#include "transit_hl/timetable.hpp"

namespace transit_hl {

struct Coordinate {
    double lat = 0;
    double lon = 0;
    bool operator==(const Coordinate &) const = default;
};

struct WalkEdge {
    VertexId tail = 0;
    VertexId head = 0;
    Time weight = 0;
    bool operator==(const WalkEdge &) const = default;
};

struct Arc {
    VertexId head;
    Time weight;
};

// Directed footpath graph. Vertices 0..num_stops()-1 are the timetable stops,
// the remaining ones are plain pedestrian-network nodes.
class WalkGraph {
public:
    WalkGraph() = default;
    WalkGraph(std::size_t num_vertices, std::size_t num_stops, std::vector<WalkEdge> edges,
              std::vector<std::optional<Coordinate>> coordinates = {});

    std::size_t num_vertices() const { return num_vertices_; }
    std::size_t num_stops() const { return num_stops_; }
    std::size_t num_edges() const { return edges_.size(); }
    bool is_stop(VertexId v) const { return v < num_stops_; }

    const std::vector<WalkEdge> &edges() const { return edges_; }
    std::span<const Arc> out_arcs(VertexId v) const;
    std::span<const Arc> in_arcs(VertexId v) const;

    std::optional<Coordinate> coordinate(VertexId v) const;
    const std::vector<std::optional<Coordinate>> &coordinates() const { return coords_; }

    WalkGraph reversed() const;

    bool operator==(const WalkGraph &o) const {
        return num_vertices_ == o.num_vertices_ && num_stops_ == o.num_stops_ &&
               edges_ == o.edges_ && coords_ == o.coords_;
    }

private:
    std::size_t num_vertices_ = 0;
    std::size_t num_stops_ = 0;
    std::vector<WalkEdge> edges_;
    std::vector<std::optional<Coordinate>> coords_;
    std::vector<std::uint32_t> out_offsets_, in_offsets_;
    std::vector<Arc> out_arcs_, in_arcs_;
};

enum class Direction { Forward, Backward };

struct DijkstraSource {
    VertexId vertex;
    Time offset = 0;
};

// Exact distances from the source set (kInfinity where unreached or beyond
// the cutoff). Backward follows arcs in reverse, i.e. distances *to* sources.
std::vector<Time> dijkstra(const WalkGraph &g, std::span<const DijkstraSource> sources,
                           Direction direction = Direction::Forward,
                           Time cutoff = kInfinity);
std::vector<Time> dijkstra(const WalkGraph &g, VertexId source,
                           Direction direction = Direction::Forward,
                           Time cutoff = kInfinity);

// One shortest vertex path from u to v, empty if unreachable.
std::vector<VertexId> shortest_path(const WalkGraph &g, VertexId u, VertexId v);

// Great-circle distance in meters.
double haversine_meters(const Coordinate &a, const Coordinate &b);
// Whole seconds needed to walk `meters` at 4 km/h, rounded up, at least 1.
Time walking_seconds(double meters);

enum class StopAttachment { Identified, Linked, Isolated };

struct EmbeddedGraph {
    WalkGraph graph;
    // Pedestrian vertex -> vertex of the new graph.
    std::vector<VertexId> vertex_map;
    std::vector<StopAttachment> attachment;
};

struct EmbedOptions {
    double identify_radius_m = 5.0;   // strictly closer: stop takes over the vertex
    double link_radius_m = 100.0;     // inclusive
    std::size_t max_links = 5;
};

// Merges stops into a pedestrian graph (which must not contain stops yet).
// The result numbers the stops first, followed by the pedestrian vertices
// that were not taken over by a stop.
EmbeddedGraph embed_stops(const WalkGraph &pedestrian, std::span<const Stop> stops,
                          const EmbedOptions &options = {});

struct Transfer {
    StopId to;
    Time duration;
    bool operator==(const Transfer &) const = default;
};

// Transitively closed stop-to-stop walking graph, lists sorted by duration.
class TransferGraph {
public:
    TransferGraph() = default;
    TransferGraph(std::size_t num_stops, std::vector<std::vector<Transfer>> lists);

    std::size_t num_stops() const { return lists_.size(); }
    std::size_t num_transfers() const;
    std::span<const Transfer> from(StopId s) const { return lists_[s]; }
    std::optional<Time> duration(StopId from, StopId to) const;

    TransferGraph reversed() const;

    bool operator==(const TransferGraph &) const = default;

private:
    std::vector<std::vector<Transfer>> lists_;
};

// Links stop pairs whose walking time along g is within radius_m at 4 km/h,
// then closes the link graph transitively (shortest chains of links).
TransferGraph build_transfer_graph(const WalkGraph &g, double radius_m);
// Same with the radius given in seconds of walking.
TransferGraph build_transfer_graph_seconds(const WalkGraph &g, double radius_seconds);
// Closure of the whole walking graph restricted to stops.
TransferGraph full_transfer_closure(const WalkGraph &g);

// Text edge list "u v weight_seconds" plus optional coordinate table
// "v lat lon". The vertex count is the largest id seen plus one, or
// num_vertices when given.
WalkGraph load_walk_graph_text(const std::filesystem::path &edges,
                               const std::optional<std::filesystem::path> &coords,
                               std::size_t num_stops, std::size_t num_vertices = 0);
void save_walk_graph_text(const WalkGraph &g, const std::filesystem::path &edges,
                          const std::filesystem::path &coords);
// Binary form: magic "THLWALK1", u64 vertices, u64 stops, u64 edges,
// edges as (u32 tail, u32 head, i64 weight), then per vertex a u8 flag and
// two f64 coordinates when the flag is set. Host byte order (little endian).
void save_walk_graph_binary(const WalkGraph &g, const std::filesystem::path &path);
WalkGraph load_walk_graph_binary(const std::filesystem::path &path);

}  // namespace transit_hl
