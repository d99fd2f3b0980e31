#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hostknot/kb.hpp"

namespace hostknot {

enum class EdgeLabel { yes, no, unknown };

std::string to_string(EdgeLabel e);

// Three-valued directed graph over a finite universe; labels mirror the
// saturated knowledge base exactly, unknown iff no judgment.
class HostingQuiver {
public:
    HostingQuiver(std::vector<KnotType> vertices,
                  std::map<std::pair<KnotType, KnotType>, EdgeLabel> labels);

    const std::vector<KnotType>& vertices() const { return vertices_; }
    bool has_vertex(const KnotType& k) const;
    EdgeLabel label(const KnotType& host, const KnotType& guest) const;

    std::vector<KnotType> yes_successors(const KnotType& k) const;
    std::vector<KnotType> yes_predecessors(const KnotType& k) const;

private:
    std::vector<KnotType> vertices_;
    std::map<std::pair<KnotType, KnotType>, EdgeLabel> labels_;
};

struct UnsaturatedKbError : KnotError {
    UnsaturatedKbError() : KnotError("knowledge base is not saturated") {}
};

struct UnknownVertexError : KnotError {
    explicit UnknownVertexError(const KnotType& k)
        : KnotError("vertex '" + to_string(k) + "' is not in the universe") {}
};

HostingQuiver build_quiver(const KnowledgeBase& kb);

// Undirected graph of mutual proved hosting between distinct vertices.
class FriendshipGraph {
public:
    explicit FriendshipGraph(std::vector<KnotType> vertices);

    void add_edge(const KnotType& a, const KnotType& b);
    bool has_edge(const KnotType& a, const KnotType& b) const;

    const std::vector<KnotType>& vertices() const { return vertices_; }
    const std::set<std::pair<KnotType, KnotType>>& edges() const { return edges_; }
    std::vector<KnotType> neighbors(const KnotType& k) const;

private:
    std::vector<KnotType> vertices_;
    std::set<std::pair<KnotType, KnotType>> edges_;  // stored with first < second
};

FriendshipGraph friendship_graph(const HostingQuiver& q);

// BFS distance over proved friendship edges; nullopt means disconnected.
// Computed over proved edges only, so the value is an upper bound on the
// true friendship distance.
std::optional<int> friendship_distance(const FriendshipGraph& g, const KnotType& a,
                                       const KnotType& b);

std::set<KnotType> nth_friends(const FriendshipGraph& g, const KnotType& k, int n);

// n-step forward reachability over yes-edges: S^0(K)={K},
// S^{n+1}(K) = union of out-neighbor sets over S^n(K), within the universe.
std::set<KnotType> s_iter(const HostingQuiver& q, const KnotType& k, int n);
std::set<KnotType> s_infinity(const HostingQuiver& q, const KnotType& k);

// Incoming hosting sets: h_set(K) = in-neighbors along yes-edges (contains K
// after saturation); h_infinity = backward reachability.
std::set<KnotType> h_set(const HostingQuiver& q, const KnotType& k);
std::set<KnotType> h_infinity(const HostingQuiver& q, const KnotType& k);

std::vector<std::set<KnotType>> strongly_connected_components(const HostingQuiver& q);

struct RigidityFinding {
    KnotType a;
    KnotType b;
    std::string kind;  // "outgoing" or "incoming"
    bool proved_friends = false;
};

struct RigidityReport {
    std::vector<RigidityFinding> findings;
    bool mutual_reachability_ok = true;
    std::vector<std::pair<KnotType, KnotType>> reachability_violations;
    std::string caveat;
};

// Flags pairs with identical proved outgoing or incoming yes-sets and checks
// that finite friendship distance implies mutual yes-reachability. Findings
// are within-KB evidence only, never theorems.
RigidityReport rigidity_checks(const HostingQuiver& q);

}  // namespace hostknot
