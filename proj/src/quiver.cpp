#include "hostknot/quiver.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace hostknot {

std::string to_string(EdgeLabel e) {
    switch (e) {
        case EdgeLabel::yes: return "yes";
        case EdgeLabel::no: return "no";
        case EdgeLabel::unknown: return "unknown";
    }
    throw KnotError("invalid EdgeLabel value");
}

HostingQuiver::HostingQuiver(std::vector<KnotType> vertices,
                             std::map<std::pair<KnotType, KnotType>, EdgeLabel> labels)
    : vertices_(std::move(vertices)), labels_(std::move(labels)) {
    std::sort(vertices_.begin(), vertices_.end());
}

bool HostingQuiver::has_vertex(const KnotType& k) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), k);
}

EdgeLabel HostingQuiver::label(const KnotType& host, const KnotType& guest) const {
    if (!has_vertex(host)) throw UnknownVertexError(host);
    if (!has_vertex(guest)) throw UnknownVertexError(guest);
    auto it = labels_.find(std::make_pair(host, guest));
    return it == labels_.end() ? EdgeLabel::unknown : it->second;
}

std::vector<KnotType> HostingQuiver::yes_successors(const KnotType& k) const {
    std::vector<KnotType> out;
    for (const KnotType& v : vertices_)
        if (label(k, v) == EdgeLabel::yes) out.push_back(v);
    return out;
}

std::vector<KnotType> HostingQuiver::yes_predecessors(const KnotType& k) const {
    std::vector<KnotType> out;
    for (const KnotType& v : vertices_)
        if (label(v, k) == EdgeLabel::yes) out.push_back(v);
    return out;
}

HostingQuiver build_quiver(const KnowledgeBase& kb) {
    if (!kb.saturated()) throw UnsaturatedKbError();
    std::vector<KnotType> vertices(kb.universe.begin(), kb.universe.end());
    std::map<std::pair<KnotType, KnotType>, EdgeLabel> labels;
    for (const auto& [key, j] : kb.judgments())
        labels.emplace(key, j.polarity == Polarity::yes ? EdgeLabel::yes : EdgeLabel::no);
    return HostingQuiver(std::move(vertices), std::move(labels));
}

FriendshipGraph::FriendshipGraph(std::vector<KnotType> vertices)
    : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
}

void FriendshipGraph::add_edge(const KnotType& a, const KnotType& b) {
    if (a == b) throw KnotError("friendship edges join distinct vertices");
    edges_.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
}

bool FriendshipGraph::has_edge(const KnotType& a, const KnotType& b) const {
    if (a == b) return false;
    return edges_.count(a < b ? std::make_pair(a, b) : std::make_pair(b, a)) > 0;
}

std::vector<KnotType> FriendshipGraph::neighbors(const KnotType& k) const {
    std::vector<KnotType> out;
    for (const KnotType& v : vertices_)
        if (has_edge(k, v)) out.push_back(v);
    return out;
}

FriendshipGraph friendship_graph(const HostingQuiver& q) {
    FriendshipGraph g(q.vertices());
    const auto& vs = q.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (q.label(vs[i], vs[j]) == EdgeLabel::yes &&
                q.label(vs[j], vs[i]) == EdgeLabel::yes)
                g.add_edge(vs[i], vs[j]);
    return g;
}

namespace {

std::map<KnotType, int> bfs_distances(const FriendshipGraph& g, const KnotType& start) {
    std::map<KnotType, int> dist{{start, 0}};
    std::deque<KnotType> queue{start};
    while (!queue.empty()) {
        KnotType cur = queue.front();
        queue.pop_front();
        for (const KnotType& next : g.neighbors(cur)) {
            if (dist.count(next)) continue;
            dist[next] = dist[cur] + 1;
            queue.push_back(next);
        }
    }
    return dist;
}

std::set<KnotType> closure(const HostingQuiver& q, const KnotType& start, bool forward) {
    if (!q.has_vertex(start)) throw UnknownVertexError(start);
    std::set<KnotType> seen{start};
    std::deque<KnotType> queue{start};
    while (!queue.empty()) {
        KnotType cur = queue.front();
        queue.pop_front();
        for (const KnotType& next :
             forward ? q.yes_successors(cur) : q.yes_predecessors(cur)) {
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return seen;
}

}  // namespace

std::optional<int> friendship_distance(const FriendshipGraph& g, const KnotType& a,
                                       const KnotType& b) {
    if (!std::binary_search(g.vertices().begin(), g.vertices().end(), a))
        throw UnknownVertexError(a);
    if (!std::binary_search(g.vertices().begin(), g.vertices().end(), b))
        throw UnknownVertexError(b);
    auto dist = bfs_distances(g, a);
    auto it = dist.find(b);
    if (it == dist.end()) return std::nullopt;
    return it->second;
}

std::set<KnotType> nth_friends(const FriendshipGraph& g, const KnotType& k, int n) {
    if (n < 0) throw KnotError("nth_friends needs n >= 0");
    std::set<KnotType> out;
    for (const auto& [vertex, d] : bfs_distances(g, k))
        if (d == n) out.insert(vertex);
    return out;
}

std::set<KnotType> s_iter(const HostingQuiver& q, const KnotType& k, int n) {
    if (n < 0) throw KnotError("s_iter needs n >= 0");
    if (!q.has_vertex(k)) throw UnknownVertexError(k);
    std::set<KnotType> level{k};
    for (int step = 0; step < n; ++step) {
        std::set<KnotType> next;
        for (const KnotType& v : level)
            for (const KnotType& succ : q.yes_successors(v)) next.insert(succ);
        level = std::move(next);
    }
    return level;
}

std::set<KnotType> s_infinity(const HostingQuiver& q, const KnotType& k) {
    return closure(q, k, /*forward=*/true);
}

std::set<KnotType> h_set(const HostingQuiver& q, const KnotType& k) {
    if (!q.has_vertex(k)) throw UnknownVertexError(k);
    auto preds = q.yes_predecessors(k);
    return std::set<KnotType>(preds.begin(), preds.end());
}

std::set<KnotType> h_infinity(const HostingQuiver& q, const KnotType& k) {
    return closure(q, k, /*forward=*/false);
}

std::vector<std::set<KnotType>> strongly_connected_components(const HostingQuiver& q) {
    // Tarjan over the yes-edge digraph, iterative to keep the stack shallow.
    const auto& vs = q.vertices();
    std::map<KnotType, int> index, lowlink;
    std::vector<KnotType> stack;
    std::set<KnotType> on_stack;
    std::vector<std::set<KnotType>> components;
    int counter = 0;

    std::function<void(const KnotType&)> strongconnect = [&](const KnotType& v) {
        index[v] = lowlink[v] = counter++;
        stack.push_back(v);
        on_stack.insert(v);
        for (const KnotType& w : q.yes_successors(v)) {
            if (!index.count(w)) {
                strongconnect(w);
                lowlink[v] = std::min(lowlink[v], lowlink[w]);
            } else if (on_stack.count(w)) {
                lowlink[v] = std::min(lowlink[v], index[w]);
            }
        }
        if (lowlink[v] == index[v]) {
            std::set<KnotType> comp;
            for (;;) {
                KnotType w = stack.back();
                stack.pop_back();
                on_stack.erase(w);
                comp.insert(w);
                if (w == v) break;
            }
            components.push_back(std::move(comp));
        }
    };

    for (const KnotType& v : vs)
        if (!index.count(v)) strongconnect(v);
    return components;
}

RigidityReport rigidity_checks(const HostingQuiver& q) {
    RigidityReport report;
    report.caveat =
        "within-KB evidence over proved yes-sets restricted to the universe; "
        "not a theorem about the full hosting sets";
    const auto& vs = q.vertices();

    std::map<KnotType, std::set<KnotType>> out_sets, in_sets;
    for (const KnotType& v : vs) {
        auto succs = q.yes_successors(v);
        out_sets[v] = std::set<KnotType>(succs.begin(), succs.end());
        auto preds = q.yes_predecessors(v);
        in_sets[v] = std::set<KnotType>(preds.begin(), preds.end());
    }

    // Sets are compared both literally and with the mandatory self-loop
    // removed, so reflexivity-only vertices are still flagged as lookalikes.
    auto without_self = [](std::set<KnotType> s, const KnotType& self) {
        s.erase(self);
        return s;
    };
    FriendshipGraph fg = friendship_graph(q);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            bool friends = fg.has_edge(vs[i], vs[j]);
            if (out_sets[vs[i]] == out_sets[vs[j]] ||
                without_self(out_sets[vs[i]], vs[i]) == without_self(out_sets[vs[j]], vs[j]))
                report.findings.push_back({vs[i], vs[j], "outgoing", friends});
            if (in_sets[vs[i]] == in_sets[vs[j]] ||
                without_self(in_sets[vs[i]], vs[i]) == without_self(in_sets[vs[j]], vs[j]))
                report.findings.push_back({vs[i], vs[j], "incoming", friends});
        }
    }

    // Every finite friendship distance must come with mutual yes-reachability.
    for (const KnotType& a : vs) {
        std::set<KnotType> fwd = s_infinity(q, a);
        for (const KnotType& b : vs) {
            if (a == b) continue;
            auto d = friendship_distance(fg, a, b);
            if (!d) continue;
            if (!fwd.count(b) || !s_infinity(q, b).count(a)) {
                report.mutual_reachability_ok = false;
                report.reachability_violations.emplace_back(a, b);
            }
        }
    }
    return report;
}

}  // namespace hostknot
