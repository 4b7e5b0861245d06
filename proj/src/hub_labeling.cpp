#include "transit_hl/hub_labeling.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace transit_hl {

namespace {

bool by_dist(const HubEntry &a, const HubEntry &b) {
    return a.dist != b.dist ? a.dist < b.dist : a.node < b.node;
}

bool by_node(const HubEntry &a, const HubEntry &b) { return a.node < b.node; }

}  // namespace

HubLabeling::HubLabeling(std::size_t num_vertices, std::size_t num_stops,
                         std::vector<std::vector<HubEntry>> out,
                         std::vector<std::vector<HubEntry>> in)
    : num_stops_(num_stops), out_(std::move(out)), in_(std::move(in)) {
    out_.resize(num_vertices);
    in_.resize(num_vertices);
    index();
}

void HubLabeling::index() {
    const std::size_t n = out_.size();
    out_inv_.assign(n, {});
    in_inv_.assign(n, {});
    out_by_hub_.assign(n, {});
    in_by_hub_.assign(n, {});
    for (VertexId v = 0; v < n; ++v) {
        std::sort(out_[v].begin(), out_[v].end(), by_dist);
        std::sort(in_[v].begin(), in_[v].end(), by_dist);
        for (const HubEntry &e : out_[v]) out_inv_[e.node].push_back(HubEntry{v, e.dist});
        for (const HubEntry &e : in_[v]) in_inv_[e.node].push_back(HubEntry{v, e.dist});
        out_by_hub_[v] = out_[v];
        in_by_hub_[v] = in_[v];
        std::sort(out_by_hub_[v].begin(), out_by_hub_[v].end(), by_node);
        std::sort(in_by_hub_[v].begin(), in_by_hub_[v].end(), by_node);
    }
    for (VertexId h = 0; h < n; ++h) {
        std::sort(out_inv_[h].begin(), out_inv_[h].end(), by_dist);
        std::sort(in_inv_[h].begin(), in_inv_[h].end(), by_dist);
    }
}

std::pair<Time, VertexId> HubLabeling::query_with_hub(VertexId u, VertexId v) const {
    const auto &a = out_by_hub_[u];
    const auto &b = in_by_hub_[v];
    Time best = kInfinity;
    VertexId hub = kNone;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].node < b[j].node) {
            ++i;
        } else if (a[i].node > b[j].node) {
            ++j;
        } else {
            Time d = a[i].dist + b[j].dist;
            if (d < best) {
                best = d;
                hub = a[i].node;
            }
            ++i;
            ++j;
        }
    }
    return {best, hub};
}

Time HubLabeling::query(VertexId u, VertexId v) const { return query_with_hub(u, v).first; }

HubLabeling HubLabeling::reversed() const {
    return HubLabeling(num_vertices(), num_stops_, in_, out_);
}

HubLabeling HubLabeling::restricted_to_stops() const {
    std::vector<std::vector<HubEntry>> out(num_vertices()), in(num_vertices());
    for (VertexId v = 0; v < num_stops_; ++v) {
        out[v] = out_[v];
        in[v] = in_[v];
    }
    return HubLabeling(num_vertices(), num_stops_, std::move(out), std::move(in));
}

LabelStats HubLabeling::stats(StatsScope scope) const {
    LabelStats s;
    const std::size_t n = scope == StatsScope::Stops ? num_stops_ : num_vertices();
    std::vector<bool> used(num_vertices(), false);
    for (VertexId v = 0; v < n; ++v) {
        s.total_out += out_[v].size();
        s.total_in += in_[v].size();
        s.max_out = std::max(s.max_out, out_[v].size());
        s.max_in = std::max(s.max_in, in_[v].size());
        for (const HubEntry &e : out_[v]) used[e.node] = true;
        for (const HubEntry &e : in_[v]) used[e.node] = true;
    }
    s.num_hubs = static_cast<std::size_t>(std::count(used.begin(), used.end(), true));
    if (n > 0) {
        s.avg_out = static_cast<double>(s.total_out) / n;
        s.avg_in = static_cast<double>(s.total_in) / n;
    }
    return s;
}

// --- construction ------------------------------------------------------------

HubLabeling build_labeling(const WalkGraph &g, VertexOrder order,
                           std::span<const VertexId> given) {
    const std::size_t n = g.num_vertices();
    std::vector<VertexId> roots;
    if (order == VertexOrder::Given) {
        roots.assign(given.begin(), given.end());
        std::vector<bool> seen(n, false);
        if (roots.size() != n) throw InputError("vertex order must list every vertex once");
        for (VertexId v : roots) {
            if (v >= n || seen[v]) throw InputError("vertex order must list every vertex once");
            seen[v] = true;
        }
    } else {
        roots.resize(n);
        std::iota(roots.begin(), roots.end(), 0);
        std::stable_sort(roots.begin(), roots.end(), [&](VertexId a, VertexId b) {
            return g.out_arcs(a).size() + g.in_arcs(a).size() >
                   g.out_arcs(b).size() + g.in_arcs(b).size();
        });
    }

    std::vector<std::vector<HubEntry>> out(n), in(n);
    std::vector<Time> dist(n, kInfinity);
    std::vector<Time> root_label(n, kInfinity);
    std::vector<VertexId> touched;
    using Item = std::pair<Time, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;

    // One pruned Dijkstra. Forward: labels r into in(v) and prunes with
    // out(r) x in(v). Backward: labels r into out(v) with out(v) x in(r).
    auto pruned_search = [&](VertexId r, Direction direction) {
        auto &root_side = direction == Direction::Forward ? out[r] : in[r];
        auto &target_side = direction == Direction::Forward ? in : out;
        for (const HubEntry &e : root_side) root_label[e.node] = e.dist;
        dist[r] = 0;
        touched.push_back(r);
        queue.emplace(0, r);
        while (!queue.empty()) {
            auto [d, v] = queue.top();
            queue.pop();
            if (d > dist[v]) continue;
            Time covered = kInfinity;
            for (const HubEntry &e : target_side[v]) {
                if (reachable(root_label[e.node])) {
                    covered = std::min(covered, root_label[e.node] + e.dist);
                }
            }
            if (covered <= d) continue;
            target_side[v].push_back(HubEntry{r, d});
            auto arcs = direction == Direction::Forward ? g.out_arcs(v) : g.in_arcs(v);
            for (const Arc &a : arcs) {
                Time nd = d + a.weight;
                if (nd < dist[a.head]) {
                    if (!reachable(dist[a.head])) touched.push_back(a.head);
                    dist[a.head] = nd;
                    queue.emplace(nd, a.head);
                }
            }
        }
        for (VertexId v : touched) dist[v] = kInfinity;
        touched.clear();
        for (const HubEntry &e : root_side) root_label[e.node] = kInfinity;
    };

    for (VertexId r : roots) {
        pruned_search(r, Direction::Forward);
        pruned_search(r, Direction::Backward);
    }
    return HubLabeling(n, g.num_stops(), std::move(out), std::move(in));
}

// --- files --------------------------------------------------------------------

namespace {

constexpr char kHubMagic[6] = {'T', 'H', 'L', 'H', 'U', 'B'};
constexpr std::uint16_t kHubVersion = 1;

template <class T>
void put(std::ofstream &out, const T &v) {
    out.write(reinterpret_cast<const char *>(&v), sizeof v);
}

template <class T>
T get(std::ifstream &in, const std::filesystem::path &p) {
    T v;
    if (!in.read(reinterpret_cast<char *>(&v), sizeof v)) {
        throw CorruptFileError(p.string() + ": truncated label file");
    }
    return v;
}

}  // namespace

void save_labeling(const HubLabeling &hl, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    out.write(kHubMagic, sizeof kHubMagic);
    put<std::uint16_t>(out, kHubVersion);
    put<std::uint64_t>(out, hl.num_vertices());
    put<std::uint64_t>(out, hl.num_stops());
    for (int side = 0; side < 2; ++side) {
        for (VertexId v = 0; v < hl.num_vertices(); ++v) {
            auto list = side == 0 ? hl.out(v) : hl.in(v);
            put<std::uint32_t>(out, static_cast<std::uint32_t>(list.size()));
            for (const HubEntry &e : list) {
                put<std::uint32_t>(out, e.node);
                put<std::int64_t>(out, e.dist);
            }
        }
    }
    if (!out) throw InputError("cannot write " + path.string());
}

HubLabeling load_labeling(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    char magic[sizeof kHubMagic];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kHubMagic, sizeof magic) != 0) {
        throw CorruptFileError(path.string() + ": not a label file");
    }
    auto version = get<std::uint16_t>(in, path);
    if (version != kHubVersion) {
        throw VersionMismatchError(path.string() + ": label file version " +
                                   std::to_string(version) + ", expected " +
                                   std::to_string(kHubVersion));
    }
    auto n = get<std::uint64_t>(in, path);
    auto stops = get<std::uint64_t>(in, path);
    if (stops > n || n > std::numeric_limits<VertexId>::max()) {
        throw CorruptFileError(path.string() + ": bad header");
    }
    std::vector<std::vector<HubEntry>> lists[2];
    for (auto &side : lists) {
        side.resize(n);
        for (VertexId v = 0; v < n; ++v) {
            auto count = get<std::uint32_t>(in, path);
            side[v].reserve(std::min<std::uint32_t>(count, 1u << 20));
            for (std::uint32_t i = 0; i < count; ++i) {
                HubEntry e;
                e.node = get<std::uint32_t>(in, path);
                e.dist = get<std::int64_t>(in, path);
                if (e.node >= n || e.dist < 0) throw CorruptFileError(path.string() + ": bad entry");
                if (!side[v].empty() && by_dist(e, side[v].back())) {
                    throw CorruptFileError(path.string() + ": list of vertex " + std::to_string(v) +
                                           " is not sorted");
                }
                side[v].push_back(e);
            }
        }
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw CorruptFileError(path.string() + ": trailing data");
    }
    for (VertexId v = 0; v < stops; ++v) {
        for (auto &side : lists) {
            bool self = std::any_of(side[v].begin(), side[v].end(),
                                    [&](const HubEntry &e) { return e.node == v && e.dist == 0; });
            if (!self) {
                throw CorruptFileError(path.string() + ": stop " + std::to_string(v) +
                                       " lacks its self hub");
            }
        }
    }
    return HubLabeling(n, stops, std::move(lists[0]), std::move(lists[1]));
}

HubLabeling import_hub_files(const std::filesystem::path &in_hubs,
                             const std::filesystem::path &out_hubs, std::span<const Stop> stops) {
    std::unordered_map<std::string, VertexId> ids;
    for (const Stop &s : stops) ids.emplace(s.external_id, s.id);
    std::unordered_map<std::string, VertexId> hub_ids = ids;
    VertexId next = static_cast<VertexId>(stops.size());
    auto hub_of = [&](const std::string &name) {
        auto [it, fresh] = hub_ids.emplace(name, next);
        if (fresh) ++next;
        return it->second;
    };

    std::vector<std::vector<HubEntry>> lists[2];
    for (int side = 0; side < 2; ++side) {
        const auto &path = side == 0 ? out_hubs : in_hubs;
        std::ifstream file(path);
        if (!file) throw InputError("cannot open " + path.string());
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(file, line)) {
            ++line_no;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ls(line);
            std::string tag, a, b, d;
            if (!(ls >> tag >> a >> b >> d)) continue;
            Time dist;
            try {
                std::size_t used = 0;
                dist = std::stoll(d, &used);
                if (used != d.size()) continue;  // header line
            } catch (const std::logic_error &) {
                continue;
            }
            if (dist < 0) throw ParseError(path.string(), line_no, "negative hub distance");
            // out-hubs: tag stop hub dist; in-hubs: tag hub stop dist
            const std::string &stop_name = side == 0 ? a : b;
            const std::string &hub_name = side == 0 ? b : a;
            auto st = ids.find(stop_name);
            if (st == ids.end()) continue;
            VertexId hub = hub_of(hub_name);
            auto &list = lists[side];
            if (list.size() <= st->second) list.resize(stops.size());
            list[st->second].push_back(HubEntry{hub, dist});
        }
    }
    for (auto &side : lists) {
        side.resize(next);
        for (VertexId s = 0; s < stops.size(); ++s) {
            bool self = std::any_of(side[s].begin(), side[s].end(),
                                    [&](const HubEntry &e) { return e.node == s; });
            if (!self) side[s].push_back(HubEntry{s, 0});
        }
    }
    return HubLabeling(next, stops.size(), std::move(lists[0]), std::move(lists[1]));
}

}  // namespace transit_hl
