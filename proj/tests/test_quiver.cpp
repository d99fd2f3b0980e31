#include <algorithm>

#include "doctest.h"
#include "hostknot/json_io.hpp"
#include "hostknot/quiver.hpp"

using namespace hostknot;

namespace {

KnotType named(const std::string& label) { return KnotType(KnotAtom{NamedAtom{label}}); }

std::set<KnotType> seed_universe() {
    return {named("3_1"), named("4_1"), named("5_1"), named("8_19"),
            repeated_sum(named("3_1"), 3)};
}

KnowledgeBase saturated_seed_kb() {
    SeedData s = load_knot_data(HOSTKNOT_DATA_FILE);
    KnowledgeBase kb;
    kb.aliases = s.aliases;
    kb.attributes = s.attributes;
    kb.universe = seed_universe();
    saturate(kb);
    return kb;
}

}  // namespace

TEST_CASE("build_quiver mirrors the saturated KB exactly") {
    KnowledgeBase kb = saturated_seed_kb();
    HostingQuiver q = build_quiver(kb);

    CHECK(q.label(named("3_1"), named("8_19")) == EdgeLabel::yes);
    CHECK(q.label(named("3_1"), named("4_1")) == EdgeLabel::no);
    CHECK(q.label(named("4_1"), named("8_19")) == EdgeLabel::unknown);

    for (const KnotType& a : q.vertices()) {
        CHECK(q.label(a, a) == EdgeLabel::yes);  // reflexivity after saturation
        for (const KnotType& b : q.vertices()) {
            auto pol = kb.polarity_of(a, b);
            EdgeLabel expected = !pol ? EdgeLabel::unknown
                                 : *pol == Polarity::yes ? EdgeLabel::yes
                                                         : EdgeLabel::no;
            CHECK(q.label(a, b) == expected);
        }
    }

    CHECK_THROWS_AS(q.label(named("3_1"), KnotType(KnotAtom{make_torus(5, 7)})),
                    UnknownVertexError);
}

TEST_CASE("build_quiver rejects an unsaturated KB") {
    SeedData s = load_knot_data(HOSTKNOT_DATA_FILE);
    KnowledgeBase kb;
    kb.aliases = s.aliases;
    kb.attributes = s.attributes;
    kb.universe = seed_universe();
    CHECK_THROWS_AS(build_quiver(kb), UnsaturatedKbError);
}

TEST_CASE("friendship graph over the seed universe") {
    HostingQuiver q = build_quiver(saturated_seed_kb());
    FriendshipGraph fg = friendship_graph(q);

    CHECK(fg.has_edge(named("3_1"), named("8_19")));
    CHECK_FALSE(fg.has_edge(named("3_1"), named("4_1")));
    CHECK_FALSE(fg.has_edge(named("3_1"), named("3_1")));  // no self-loops

    for (const auto& [a, b] : fg.edges()) {
        CHECK(a != b);
        CHECK(fg.has_edge(b, a));  // symmetry
    }
}

TEST_CASE("friendship distance") {
    HostingQuiver q = build_quiver(saturated_seed_kb());
    FriendshipGraph fg = friendship_graph(q);

    CHECK(friendship_distance(fg, named("3_1"), named("3_1")) == 0);
    CHECK(friendship_distance(fg, named("3_1"), named("8_19")) == 1);
    CHECK_FALSE(friendship_distance(fg, named("3_1"), named("4_1")).has_value());
    CHECK_THROWS_AS(friendship_distance(fg, named("3_1"), KnotType(KnotAtom{make_torus(5, 7)})),
                    UnknownVertexError);

    // distance axioms over proved edges
    const auto& vs = q.vertices();
    for (const KnotType& a : vs)
        for (const KnotType& b : vs) {
            auto dab = friendship_distance(fg, a, b);
            auto dba = friendship_distance(fg, b, a);
            CHECK(dab == dba);
            if (a == b) CHECK(dab == 0);
            for (const KnotType& c : vs) {
                auto dac = friendship_distance(fg, a, c);
                auto dcb = friendship_distance(fg, c, b);
                if (dac && dcb) {
                    REQUIRE(dab.has_value());
                    CHECK(*dab <= *dac + *dcb);
                }
            }
        }
}

TEST_CASE("nth_friends") {
    HostingQuiver q = build_quiver(saturated_seed_kb());
    FriendshipGraph fg = friendship_graph(q);

    CHECK(nth_friends(fg, named("3_1"), 0) == std::set<KnotType>{named("3_1")});
    CHECK(nth_friends(fg, named("3_1"), 1).count(named("8_19")) == 1);
    CHECK_THROWS_AS(nth_friends(fg, named("3_1"), -1), KnotError);
}

TEST_CASE("nth friends lift through connected sums on a sum-closed universe") {
    SeedData s = load_knot_data(HOSTKNOT_DATA_FILE);
    KnowledgeBase kb;
    kb.aliases = s.aliases;
    kb.attributes = s.attributes;
    KnotType sum31 = repeated_sum(named("3_1"), 2);
    KnotType sum819 = repeated_sum(named("8_19"), 2);
    kb.universe = {named("3_1"), named("8_19"), sum31, sum819,
                   connected_sum(named("3_1"), named("8_19"))};
    saturate(kb);
    FriendshipGraph fg = friendship_graph(build_quiver(kb));
    CHECK(nth_friends(fg, sum31, 1).count(sum819) == 1);
}

TEST_CASE("iterated hosting sets") {
    HostingQuiver q = build_quiver(saturated_seed_kb());

    CHECK(s_iter(q, named("3_1"), 0) == std::set<KnotType>{named("3_1")});

    auto s1_41 = s_iter(q, named("4_1"), 1);
    CHECK(s1_41.count(named("4_1")) == 1);
    CHECK(s1_41.count(named("3_1")) == 1);

    auto s2_41 = s_iter(q, named("4_1"), 2);
    CHECK(s2_41.count(named("8_19")) == 1);  // 4_1 -> 3_1 -> 8_19

    // levels are monotone once closed under union with previous levels
    std::set<KnotType> cumulative;
    for (int n = 0; n <= 4; ++n) {
        auto level = s_iter(q, named("4_1"), n);
        std::set<KnotType> next = cumulative;
        next.insert(level.begin(), level.end());
        CHECK(std::includes(next.begin(), next.end(), cumulative.begin(), cumulative.end()));
        cumulative = next;
    }
    CHECK(cumulative == s_infinity(q, named("4_1")));
}

TEST_CASE("s_infinity and h sets") {
    HostingQuiver q = build_quiver(saturated_seed_kb());

    auto sinf = s_infinity(q, named("4_1"));
    CHECK(sinf.count(named("4_1")) == 1);
    CHECK(sinf.count(named("3_1")) == 1);
    CHECK(sinf.count(named("8_19")) == 1);

    auto h31 = h_set(q, named("3_1"));
    CHECK(h31.count(named("3_1")) == 1);
    CHECK(h31.count(named("4_1")) == 1);
    CHECK(h31.count(named("8_19")) == 1);

    CHECK(h_set(q, named("4_1")) == std::set<KnotType>{named("4_1")});

    // an isolated vertex reaches only itself
    CHECK(s_infinity(q, named("5_1")).count(named("5_1")) == 1);
}

TEST_CASE("reachability duality over every pair of the seed universe") {
    HostingQuiver q = build_quiver(saturated_seed_kb());
    for (const KnotType& k : q.vertices())
        for (const KnotType& j : q.vertices())
            CHECK(s_infinity(q, k).count(j) == h_infinity(q, j).count(k));
}

TEST_CASE("strongly connected components") {
    HostingQuiver q = build_quiver(saturated_seed_kb());
    auto components = strongly_connected_components(q);

    auto find_comp = [&](const KnotType& k) -> const std::set<KnotType>& {
        for (const auto& comp : components)
            if (comp.count(k)) return comp;
        FAIL("vertex not in any component");
        return components.front();
    };

    CHECK(find_comp(named("3_1")).count(named("8_19")) == 1);  // 2-cycle
    CHECK(find_comp(named("5_1")).size() == 1);
    CHECK(find_comp(named("4_1")).size() == 1);

    // friendship edges stay within one SCC
    FriendshipGraph fg = friendship_graph(q);
    for (const auto& [a, b] : fg.edges()) CHECK(find_comp(a).count(b) == 1);

    std::size_t total = 0;
    for (const auto& comp : components) total += comp.size();
    CHECK(total == q.vertices().size());  // partition
}

TEST_CASE("rigidity checks") {
    HostingQuiver q = build_quiver(saturated_seed_kb());
    RigidityReport report = rigidity_checks(q);
    CHECK(report.mutual_reachability_ok);
    CHECK(report.reachability_violations.empty());
    CHECK(report.caveat.find("within-KB") != std::string::npos);
    for (const RigidityFinding& f : report.findings) CHECK(f.a != f.b);
}

TEST_CASE("rigidity flags reflexivity-only vertices as within-KB artifacts") {
    SeedData s = load_knot_data(HOSTKNOT_DATA_FILE);
    KnowledgeBase kb;
    kb.aliases = s.aliases;
    kb.attributes = s.attributes;
    // two isolated vertices whose proved outgoing sets are both {self}
    kb.universe = {named("4_1"), named("5_1")};
    kb.config.enabled_rules = {"R1"};
    saturate(kb);
    RigidityReport report = rigidity_checks(build_quiver(kb));
    REQUIRE_FALSE(report.findings.empty());
    bool found = false;
    for (const RigidityFinding& f : report.findings)
        if (f.kind == "outgoing" && !f.proved_friends) found = true;
    CHECK(found);
}

TEST_CASE("single-vertex universe") {
    SeedData s = load_knot_data(HOSTKNOT_DATA_FILE);
    KnowledgeBase kb;
    kb.aliases = s.aliases;
    kb.attributes = s.attributes;
    kb.universe = {named("3_1")};
    saturate(kb);
    HostingQuiver q = build_quiver(kb);
    CHECK(strongly_connected_components(q).size() == 1);
    CHECK(friendship_graph(q).edges().empty());
}

TEST_CASE("Remark 5.11 check: finite friendship distance implies mutual reachability") {
    HostingQuiver q = build_quiver(saturated_seed_kb());
    FriendshipGraph fg = friendship_graph(q);
    for (const KnotType& a : q.vertices())
        for (const KnotType& b : q.vertices()) {
            if (!friendship_distance(fg, a, b).has_value()) continue;
            CHECK(s_infinity(q, a).count(b) == 1);
            CHECK(s_infinity(q, b).count(a) == 1);
        }
}
