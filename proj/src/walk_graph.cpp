#include "transit_hl/walk_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace transit_hl {

namespace {

void build_csr(std::size_t n, const std::vector<WalkEdge> &edges, bool reverse,
               std::vector<std::uint32_t> &offsets, std::vector<Arc> &arcs) {
    offsets.assign(n + 1, 0);
    for (const WalkEdge &e : edges) ++offsets[(reverse ? e.head : e.tail) + 1];
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    arcs.resize(edges.size());
    std::vector<std::uint32_t> pos(offsets.begin(), offsets.end() - 1);
    for (const WalkEdge &e : edges) {
        VertexId from = reverse ? e.head : e.tail;
        VertexId to = reverse ? e.tail : e.head;
        arcs[pos[from]++] = Arc{to, e.weight};
    }
}

using QueueItem = std::pair<Time, VertexId>;
using MinQueue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>>;

}  // namespace

WalkGraph::WalkGraph(std::size_t num_vertices, std::size_t num_stops, std::vector<WalkEdge> edges,
                     std::vector<std::optional<Coordinate>> coordinates)
    : num_vertices_(num_vertices), num_stops_(num_stops), edges_(std::move(edges)),
      coords_(std::move(coordinates)) {
    if (num_stops_ > num_vertices_) throw InputError("walking graph has fewer vertices than stops");
    for (const WalkEdge &e : edges_) {
        if (e.tail >= num_vertices_ || e.head >= num_vertices_) {
            throw DanglingReferenceError("walking edge references unknown vertex " +
                                         std::to_string(std::max(e.tail, e.head)));
        }
        if (e.weight <= 0) throw InputError("walking edge with non-positive weight");
    }
    if (std::none_of(coords_.begin(), coords_.end(), [](const auto &c) { return c.has_value(); })) {
        coords_.clear();
    }
    if (!coords_.empty() && coords_.size() != num_vertices_) {
        throw InputError("coordinate table does not match the vertex count");
    }
    build_csr(num_vertices_, edges_, false, out_offsets_, out_arcs_);
    build_csr(num_vertices_, edges_, true, in_offsets_, in_arcs_);
}

std::span<const Arc> WalkGraph::out_arcs(VertexId v) const {
    return {out_arcs_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const Arc> WalkGraph::in_arcs(VertexId v) const {
    return {in_arcs_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::optional<Coordinate> WalkGraph::coordinate(VertexId v) const {
    if (coords_.empty()) return std::nullopt;
    return coords_[v];
}

WalkGraph WalkGraph::reversed() const {
    std::vector<WalkEdge> rev;
    rev.reserve(edges_.size());
    for (const WalkEdge &e : edges_) rev.push_back(WalkEdge{e.head, e.tail, e.weight});
    return WalkGraph(num_vertices_, num_stops_, std::move(rev), coords_);
}

std::vector<Time> dijkstra(const WalkGraph &g, std::span<const DijkstraSource> sources,
                           Direction direction, Time cutoff) {
    std::vector<Time> dist(g.num_vertices(), kInfinity);
    MinQueue queue;
    for (const DijkstraSource &s : sources) {
        if (s.offset <= cutoff && s.offset < dist[s.vertex]) {
            dist[s.vertex] = s.offset;
            queue.emplace(s.offset, s.vertex);
        }
    }
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        auto arcs = direction == Direction::Forward ? g.out_arcs(u) : g.in_arcs(u);
        for (const Arc &a : arcs) {
            Time nd = d + a.weight;
            if (nd <= cutoff && nd < dist[a.head]) {
                dist[a.head] = nd;
                queue.emplace(nd, a.head);
            }
        }
    }
    return dist;
}

std::vector<Time> dijkstra(const WalkGraph &g, VertexId source, Direction direction, Time cutoff) {
    DijkstraSource s{source, 0};
    return dijkstra(g, std::span<const DijkstraSource>(&s, 1), direction, cutoff);
}

std::vector<VertexId> shortest_path(const WalkGraph &g, VertexId u, VertexId v) {
    std::vector<Time> dist(g.num_vertices(), kInfinity);
    std::vector<VertexId> parent(g.num_vertices(), kNone);
    MinQueue queue;
    dist[u] = 0;
    queue.emplace(0, u);
    while (!queue.empty()) {
        auto [d, x] = queue.top();
        queue.pop();
        if (d > dist[x]) continue;
        if (x == v) break;
        for (const Arc &a : g.out_arcs(x)) {
            if (d + a.weight < dist[a.head]) {
                dist[a.head] = d + a.weight;
                parent[a.head] = x;
                queue.emplace(dist[a.head], a.head);
            }
        }
    }
    if (!reachable(dist[v])) return {};
    std::vector<VertexId> path{v};
    while (path.back() != u) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

double haversine_meters(const Coordinate &a, const Coordinate &b) {
    constexpr double kEarthRadius = 6371000.0;
    constexpr double kRad = M_PI / 180.0;
    double dlat = (b.lat - a.lat) * kRad;
    double dlon = (b.lon - a.lon) * kRad;
    double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
               std::cos(a.lat * kRad) * std::cos(b.lat * kRad) * std::sin(dlon / 2) *
                   std::sin(dlon / 2);
    return 2 * kEarthRadius * std::asin(std::min(1.0, std::sqrt(h)));
}

Time walking_seconds(double meters) {
    double s = std::ceil(meters / kWalkingSpeedMetersPerSecond - 1e-9);
    return std::max<Time>(1, static_cast<Time>(s));
}

// --- stop embedding -----------------------------------------------------------

namespace {

// Uniform grid over an equirectangular projection; lookups return every
// vertex whose projected position lies in the 3x3 cells around the query.
class VertexGrid {
public:
    VertexGrid(const WalkGraph &g, double cell_m) : cell_(cell_m) {
        double sum = 0;
        std::size_t n = 0;
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            if (auto c = g.coordinate(v)) {
                sum += c->lat;
                ++n;
            }
        }
        cos_lat_ = std::cos((n ? sum / n : 0.0) * M_PI / 180.0);
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            if (auto c = g.coordinate(v)) cells_[key(cell_of(*c))].push_back(v);
        }
    }

    template <class F>
    void for_each_near(const Coordinate &c, F &&f) const {
        auto [cx, cy] = cell_of(c);
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = cells_.find(key({cx + dx, cy + dy}));
                if (it == cells_.end()) continue;
                for (VertexId v : it->second) f(v);
            }
        }
    }

private:
    std::pair<std::int64_t, std::int64_t> cell_of(const Coordinate &c) const {
        double x = c.lon * cos_lat_ * 111320.0;
        double y = c.lat * 110540.0;
        return {static_cast<std::int64_t>(std::floor(x / cell_)),
                static_cast<std::int64_t>(std::floor(y / cell_))};
    }
    static std::uint64_t key(std::pair<std::int64_t, std::int64_t> c) {
        return (static_cast<std::uint64_t>(c.first) << 32) ^
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.second));
    }

    double cell_;
    double cos_lat_ = 1;
    std::unordered_map<std::uint64_t, std::vector<VertexId>> cells_;
};

}  // namespace

EmbeddedGraph embed_stops(const WalkGraph &pedestrian, std::span<const Stop> stops,
                          const EmbedOptions &options) {
    if (pedestrian.num_stops() != 0) {
        throw InputError("pedestrian graph passed to embed_stops already contains stops");
    }
    const std::size_t n_stops = stops.size();
    const std::size_t n_ped = pedestrian.num_vertices();
    VertexGrid grid(pedestrian, options.link_radius_m * 1.5);

    std::vector<StopId> owner(n_ped, kNone);
    std::vector<VertexId> copy_from(n_stops, kNone);
    std::vector<std::vector<std::pair<VertexId, double>>> links(n_stops);
    std::vector<StopAttachment> attachment(n_stops, StopAttachment::Isolated);

    for (StopId p = 0; p < n_stops; ++p) {
        const Stop &stop = stops[p];
        if (!stop.has_coordinates()) {
            throw InputError("stop '" + stop.external_id + "' has no coordinates");
        }
        Coordinate c{*stop.lat, *stop.lon};
        std::vector<std::pair<double, VertexId>> near;
        grid.for_each_near(c, [&](VertexId v) {
            double d = haversine_meters(c, *pedestrian.coordinate(v));
            if (d <= options.link_radius_m) near.emplace_back(d, v);
        });
        std::sort(near.begin(), near.end());
        if (!near.empty() && near.front().first < options.identify_radius_m) {
            VertexId v = near.front().second;
            attachment[p] = StopAttachment::Identified;
            if (owner[v] == kNone) {
                owner[v] = p;
            } else {
                copy_from[p] = v;
            }
            continue;
        }
        for (std::size_t i = 0; i < near.size() && i < options.max_links; ++i) {
            links[p].emplace_back(near[i].second, near[i].first);
        }
        if (!links[p].empty()) attachment[p] = StopAttachment::Linked;
    }

    std::vector<VertexId> map(n_ped);
    VertexId next = static_cast<VertexId>(n_stops);
    for (VertexId v = 0; v < n_ped; ++v) map[v] = owner[v] != kNone ? owner[v] : next++;

    std::vector<WalkEdge> edges;
    edges.reserve(pedestrian.num_edges());
    for (const WalkEdge &e : pedestrian.edges()) {
        edges.push_back(WalkEdge{map[e.tail], map[e.head], e.weight});
    }
    for (StopId p = 0; p < n_stops; ++p) {
        if (copy_from[p] != kNone) {
            VertexId v = copy_from[p];
            for (const Arc &a : pedestrian.out_arcs(v)) edges.push_back({p, map[a.head], a.weight});
            for (const Arc &a : pedestrian.in_arcs(v)) edges.push_back({map[a.head], p, a.weight});
        }
        for (auto [v, meters] : links[p]) {
            Time w = walking_seconds(meters);
            edges.push_back({p, map[v], w});
            edges.push_back({map[v], p, w});
        }
    }

    std::vector<std::optional<Coordinate>> coords(next);
    for (StopId p = 0; p < n_stops; ++p) coords[p] = Coordinate{*stops[p].lat, *stops[p].lon};
    for (VertexId v = 0; v < n_ped; ++v) {
        if (owner[v] == kNone) coords[map[v]] = pedestrian.coordinate(v);
    }
    return EmbeddedGraph{WalkGraph(next, n_stops, std::move(edges), std::move(coords)),
                         std::move(map), std::move(attachment)};
}

// --- transfer graph -------------------------------------------------------------

TransferGraph::TransferGraph(std::size_t num_stops, std::vector<std::vector<Transfer>> lists)
    : lists_(std::move(lists)) {
    lists_.resize(num_stops);
    for (auto &l : lists_) {
        std::sort(l.begin(), l.end(), [](const Transfer &a, const Transfer &b) {
            return a.duration != b.duration ? a.duration < b.duration : a.to < b.to;
        });
    }
}

std::size_t TransferGraph::num_transfers() const {
    std::size_t m = 0;
    for (const auto &l : lists_) m += l.size();
    return m;
}

std::optional<Time> TransferGraph::duration(StopId from, StopId to) const {
    for (const Transfer &t : lists_[from]) {
        if (t.to == to) return t.duration;
    }
    return std::nullopt;
}

TransferGraph TransferGraph::reversed() const {
    std::vector<std::vector<Transfer>> rev(lists_.size());
    for (StopId s = 0; s < lists_.size(); ++s) {
        for (const Transfer &t : lists_[s]) rev[t.to].push_back(Transfer{s, t.duration});
    }
    return TransferGraph(lists_.size(), std::move(rev));
}

TransferGraph build_transfer_graph_seconds(const WalkGraph &g, double radius_seconds) {
    const std::size_t n = g.num_stops();
    if (!(radius_seconds > 0)) throw InputError("transfer radius must be positive");
    const Time cutoff = std::isinf(radius_seconds)
                            ? kInfinity
                            : static_cast<Time>(std::floor(radius_seconds));
    // Links: stop pairs within the radius along g.
    std::vector<WalkEdge> links;
    for (StopId s = 0; s < n; ++s) {
        auto dist = dijkstra(g, s, Direction::Forward, cutoff);
        for (StopId t = 0; t < n; ++t) {
            if (t != s && reachable(dist[t])) links.push_back(WalkEdge{s, t, dist[t]});
        }
    }
    // Closure over the link graph.
    WalkGraph link_graph(n, n, std::move(links));
    std::vector<std::vector<Transfer>> lists(n);
    for (StopId s = 0; s < n; ++s) {
        auto dist = dijkstra(link_graph, s);
        for (StopId t = 0; t < n; ++t) {
            if (t != s && reachable(dist[t])) lists[s].push_back(Transfer{t, dist[t]});
        }
    }
    return TransferGraph(n, std::move(lists));
}

TransferGraph build_transfer_graph(const WalkGraph &g, double radius_m) {
    return build_transfer_graph_seconds(g, radius_m / kWalkingSpeedMetersPerSecond);
}

TransferGraph full_transfer_closure(const WalkGraph &g) {
    const std::size_t n = g.num_stops();
    std::vector<std::vector<Transfer>> lists(n);
    for (StopId s = 0; s < n; ++s) {
        auto dist = dijkstra(g, s);
        for (StopId t = 0; t < n; ++t) {
            if (t != s && reachable(dist[t])) lists[s].push_back(Transfer{t, dist[t]});
        }
    }
    return TransferGraph(n, std::move(lists));
}

// --- files ------------------------------------------------------------------------

WalkGraph load_walk_graph_text(const std::filesystem::path &edges_path,
                               const std::optional<std::filesystem::path> &coords_path,
                               std::size_t num_stops, std::size_t num_vertices) {
    std::ifstream in(edges_path);
    if (!in) throw InputError("cannot open " + edges_path.string());
    std::vector<WalkEdge> edges;
    std::size_t n = std::max(num_stops, num_vertices);
    std::string line;
    std::size_t line_no = 0;
    auto parse_fail = [&](const std::filesystem::path &p) {
        throw ParseError(p.string(), line_no, "malformed line '" + line + "'");
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long long u, v, w;
        if (!(ls >> u >> v >> w)) {
            // tolerate a textual header on the first line
            if (line_no == 1) continue;
            parse_fail(edges_path);
        }
        if (u < 0 || v < 0) parse_fail(edges_path);
        if (w <= 0) throw ParseError(edges_path.string(), line_no, "non-positive weight");
        edges.push_back(WalkEdge{static_cast<VertexId>(u), static_cast<VertexId>(v), w});
        n = std::max<std::size_t>(n, std::max(u, v) + 1);
    }
    std::vector<std::optional<Coordinate>> coords;
    if (coords_path) {
        std::ifstream cin(*coords_path);
        if (!cin) throw InputError("cannot open " + coords_path->string());
        std::vector<std::pair<VertexId, Coordinate>> rows;
        line_no = 0;
        while (std::getline(cin, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            long long v;
            double lat, lon;
            if (!(ls >> v)) {
                if (line_no == 1) continue;
                parse_fail(*coords_path);
            }
            if (v < 0) parse_fail(*coords_path);
            n = std::max<std::size_t>(n, v + 1);
            if (ls >> lat >> lon) rows.emplace_back(static_cast<VertexId>(v), Coordinate{lat, lon});
        }
        coords.resize(n);
        for (auto &[v, c] : rows) coords[v] = c;
    }
    return WalkGraph(n, num_stops, std::move(edges), std::move(coords));
}

void save_walk_graph_text(const WalkGraph &g, const std::filesystem::path &edges,
                          const std::filesystem::path &coords) {
    {
        std::ofstream out(edges);
        out << "u\tv\tweight\n";
        for (const WalkEdge &e : g.edges()) out << e.tail << '\t' << e.head << '\t' << e.weight << '\n';
        if (!out) throw InputError("cannot write " + edges.string());
    }
    std::ofstream out(coords);
    out << "vertex\tlat\tlon\n";
    char buf[64];
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        out << v;
        if (auto c = g.coordinate(v)) {
            std::snprintf(buf, sizeof buf, "\t%.17g\t%.17g", c->lat, c->lon);
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw InputError("cannot write " + coords.string());
}

namespace {

constexpr char kWalkMagic[8] = {'T', 'H', 'L', 'W', 'A', 'L', 'K', '1'};

template <class T>
void put(std::ofstream &out, const T &v) {
    out.write(reinterpret_cast<const char *>(&v), sizeof v);
}

template <class T>
T get(std::ifstream &in, const std::filesystem::path &p) {
    T v;
    if (!in.read(reinterpret_cast<char *>(&v), sizeof v)) {
        throw CorruptFileError(p.string() + ": truncated file");
    }
    return v;
}

}  // namespace

void save_walk_graph_binary(const WalkGraph &g, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    out.write(kWalkMagic, sizeof kWalkMagic);
    put<std::uint64_t>(out, g.num_vertices());
    put<std::uint64_t>(out, g.num_stops());
    put<std::uint64_t>(out, g.num_edges());
    for (const WalkEdge &e : g.edges()) {
        put<std::uint32_t>(out, e.tail);
        put<std::uint32_t>(out, e.head);
        put<std::int64_t>(out, e.weight);
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        auto c = g.coordinate(v);
        put<std::uint8_t>(out, c ? 1 : 0);
        if (c) {
            put<double>(out, c->lat);
            put<double>(out, c->lon);
        }
    }
    if (!out) throw InputError("cannot write " + path.string());
}

WalkGraph load_walk_graph_binary(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    char magic[8];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kWalkMagic, 7) != 0) {
        throw CorruptFileError(path.string() + ": not a walking graph file");
    }
    if (magic[7] != kWalkMagic[7]) throw VersionMismatchError(path.string() + ": unsupported version");
    auto n = get<std::uint64_t>(in, path);
    auto s = get<std::uint64_t>(in, path);
    auto m = get<std::uint64_t>(in, path);
    std::vector<WalkEdge> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        auto u = get<std::uint32_t>(in, path);
        auto v = get<std::uint32_t>(in, path);
        auto w = get<std::int64_t>(in, path);
        edges.push_back(WalkEdge{u, v, w});
    }
    std::vector<std::optional<Coordinate>> coords(n);
    bool any = false;
    for (std::uint64_t v = 0; v < n; ++v) {
        if (get<std::uint8_t>(in, path)) {
            double lat = get<double>(in, path);
            double lon = get<double>(in, path);
            coords[v] = Coordinate{lat, lon};
            any = true;
        }
    }
    if (!any) coords.clear();
    return WalkGraph(n, s, std::move(edges), std::move(coords));
}

}  // namespace transit_hl
