#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "transit_hl/common.hpp"
#include "transit_hl/walk_graph.hpp"

namespace transit_hl {

struct HubEntry {
    VertexId node;  // hub for out/in lists, labeled vertex for the inverted lists
    Time dist;
    bool operator==(const HubEntry &) const = default;
};

struct LabelStats {
    double avg_out = 0;
    std::size_t max_out = 0;
    double avg_in = 0;
    std::size_t max_in = 0;
    std::size_t num_hubs = 0;     // distinct hubs used by the counted vertices
    std::size_t total_out = 0;    // sum of out-list lengths
    std::size_t total_in = 0;     // sum of in-list lengths
};

enum class StatsScope { Stops, AllVertices };

// Two-hop cover of a walking graph. For every pair (u, v):
//   d(u, v) = min over h in out(u) ∩ in(v) of d(u, h) + d(h, v).
// out(u) and in(v) are sorted by distance (ties by hub id); the inverted
// lists in_inv(h) = {v : h in in(v)} and out_inv(h) = {u : h in out(u)} too.
class HubLabeling {
public:
    HubLabeling() = default;
    // Lists are indexed by vertex; they get sorted and inverted here.
    HubLabeling(std::size_t num_vertices, std::size_t num_stops,
                std::vector<std::vector<HubEntry>> out, std::vector<std::vector<HubEntry>> in);

    std::size_t num_vertices() const { return out_.size(); }
    std::size_t num_stops() const { return num_stops_; }
    bool is_stop(VertexId v) const { return v < num_stops_; }

    std::span<const HubEntry> out(VertexId u) const { return out_[u]; }
    std::span<const HubEntry> in(VertexId v) const { return in_[v]; }
    std::span<const HubEntry> in_inv(VertexId h) const { return in_inv_[h]; }
    std::span<const HubEntry> out_inv(VertexId h) const { return out_inv_[h]; }

    // Exact walking distance, kInfinity when v is unreachable from u.
    Time query(VertexId u, VertexId v) const;
    // Same, also reporting the meeting hub (kNone when unreachable).
    std::pair<Time, VertexId> query_with_hub(VertexId u, VertexId v) const;

    // Labeling of the reversed graph: out and in swap roles.
    HubLabeling reversed() const;

    // Drops entries that routing never reads: out lists of non-stops and
    // in lists of non-stops. Distances between stops are preserved.
    HubLabeling restricted_to_stops() const;

    LabelStats stats(StatsScope scope = StatsScope::Stops) const;

    bool operator==(const HubLabeling &o) const {
        return num_stops_ == o.num_stops_ && out_ == o.out_ && in_ == o.in_;
    }

private:
    void index();

    std::size_t num_stops_ = 0;
    std::vector<std::vector<HubEntry>> out_, in_;
    std::vector<std::vector<HubEntry>> out_inv_, in_inv_;
    // Hub-id sorted copies for merge-based queries.
    std::vector<std::vector<HubEntry>> out_by_hub_, in_by_hub_;
};

enum class VertexOrder { Degree, Given };

// Pruned landmark labeling. With VertexOrder::Degree, vertices are processed
// by decreasing in+out degree (ties by id); with Given, in the order passed.
HubLabeling build_labeling(const WalkGraph &g, VertexOrder order = VertexOrder::Degree,
                           std::span<const VertexId> given = {});

// Binary layout (little endian): magic "THLHUB" + u16 version, u64 vertices,
// u64 stops, then for out and for in: per vertex u32 count followed by
// (u32 hub, i64 dist) records.
void save_labeling(const HubLabeling &hl, const std::filesystem::path &path);
HubLabeling load_labeling(const std::filesystem::path &path);

// Published hub files: one entry per line, whitespace or comma separated,
// "<tag> <hub> <stop> <dist>" for in-hubs and "<tag> <stop> <hub> <dist>"
// for out-hubs. Stops are matched by external id, unknown stops are
// skipped, hubs that are not stops get fresh vertex ids after the stops.
// Missing self hubs are added.
HubLabeling import_hub_files(const std::filesystem::path &in_hubs,
                             const std::filesystem::path &out_hubs, std::span<const Stop> stops);

}  // namespace transit_hl
