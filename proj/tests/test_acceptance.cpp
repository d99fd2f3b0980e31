// Acceptance suite: one test case per criterion, one pass/fail line each.

#include <array>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <random>
#include <sys/wait.h>

#include "doctest.h"
#include "hostknot/json_io.hpp"
#include "hostknot/quiver.hpp"

using namespace hostknot;

namespace {

KnotType named(const std::string& label) { return KnotType(KnotAtom{NamedAtom{label}}); }

SeedData seed() { return load_knot_data(HOSTKNOT_DATA_FILE); }

std::set<KnotType> seed_universe() {
    return {named("3_1"), named("4_1"), named("5_1"), named("8_19"),
            repeated_sum(named("3_1"), 3)};
}

KnowledgeBase fresh_kb(const std::set<KnotType>& universe) {
    SeedData s = seed();
    KnowledgeBase kb;
    kb.aliases = s.aliases;
    kb.attributes = s.attributes;
    kb.universe = universe;
    return kb;
}

struct Criterion {
    const char* name;
    explicit Criterion(const char* n) : name(n) {}
    void report(bool ok) const {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << std::endl;
        CHECK_MESSAGE(ok, name);
    }
};

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_command(const std::string& cmd) {
    CommandResult result;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer;
    while (fgets(buffer.data(), buffer.size(), pipe)) result.output += buffer.data();
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

}  // namespace

TEST_CASE("criterion 1: headline judgments of the seed universe") {
    Criterion c("criterion 1: seed saturation proves the six headline judgments");
    bool ok = true;
    try {
        KnowledgeBase kb = fresh_kb(seed_universe());
        saturate(kb);
        KnotType triple = repeated_sum(named("3_1"), 3);

        struct Expected {
            KnotType host, guest;
            Polarity polarity;
        };
        std::vector<Expected> headline = {
            {named("3_1"), named("8_19"), Polarity::yes},  // Ex. 4.5
            {named("8_19"), named("3_1"), Polarity::yes},  // Prop. 5.1 route
            {named("4_1"), named("3_1"), Polarity::yes},   // Prop. 5.5
            {named("3_1"), named("4_1"), Polarity::no},    // Cor. 4.3
            {named("3_1"), named("5_1"), Polarity::no},    // Cor. 4.4
            {named("3_1"), triple, Polarity::no},          // Thm. 3.11 route
        };
        for (const Expected& e : headline) {
            const Judgment* j = kb.find(e.host, e.guest);
            ok = ok && j && j->polarity == e.polarity;
            if (j) replay_provenance(kb, *j);  // throws on a bad chain
        }

        // provenance chains name the expected rules
        ok = ok && kb.find(named("3_1"), named("8_19"))->provenance.front().rule_id == "R4";
        ok = ok && kb.find(named("8_19"), named("3_1"))->provenance.front().rule_id == "R3";
        ok = ok && kb.find(named("4_1"), named("3_1"))->provenance.front().rule_id == "R5";
        ok = ok && kb.find(named("3_1"), named("4_1"))->provenance.front().rule_id == "O1";
        ok = ok && kb.find(named("3_1"), named("5_1"))->provenance.front().rule_id == "O2";
        ok = ok && kb.find(named("3_1"), triple)->provenance.front().rule_id == "O3";
    } catch (const std::exception& e) {
        std::cerr << "criterion 1 exception: " << e.what() << "\n";
        ok = false;
    }
    c.report(ok);
}

TEST_CASE("criterion 2: friendship graph and distances over the seed universe") {
    Criterion c("criterion 2: friendship edge {3_1,8_19}, no {3_1,4_1}, exact distances");
    bool ok = true;
    try {
        KnowledgeBase kb = fresh_kb(seed_universe());
        saturate(kb);
        FriendshipGraph fg = friendship_graph(build_quiver(kb));
        ok = ok && fg.has_edge(named("3_1"), named("8_19"));
        ok = ok && !fg.has_edge(named("3_1"), named("4_1"));
        ok = ok && friendship_distance(fg, named("3_1"), named("8_19")) == 1;
        ok = ok && friendship_distance(fg, named("3_1"), named("3_1")) == 0;
    } catch (const std::exception& e) {
        std::cerr << "criterion 2 exception: " << e.what() << "\n";
        ok = false;
    }
    c.report(ok);
}

TEST_CASE("criterion 3: slope formulas agree and reproduce the genus case analysis") {
    Criterion c("criterion 3: g=(1-chi)/2 for m,n<=50; pinned genus values; inverse_genus(2)={}");
    bool ok = true;
    try {
        for (const SlopePair& s : enumerate_primitive_pairs(50))
            ok = ok && (2 * slope_genus(s) == 1 - slope_euler(s));
        ok = ok && slope_genus({1, 2}) == 1;
        ok = ok && slope_genus({1, 3}) == 3;
        ok = ok && torus_genus(3, 4) == 3;
        ok = ok && inverse_genus(2).empty();
    } catch (const std::exception& e) {
        std::cerr << "criterion 3 exception: " << e.what() << "\n";
        ok = false;
    }
    c.report(ok);
}

TEST_CASE("criterion 4: universal-host witnesses are proved impossible") {
    Criterion c("criterion 4: witness(3_1)=3_1#3_1#3_1 and Hosts(K,witness)=no per seed vertex");
    bool ok = true;
    try {
        KnowledgeBase probe = fresh_kb(seed_universe());
        ok = ok && universal_host_witness(named("3_1"), probe) == repeated_sum(named("3_1"), 3);

        std::size_t checked = 0;
        for (const KnotType& k : seed_universe()) {
            KnowledgeBase kb = fresh_kb(seed_universe());
            KnotType witness(named("3_1"));
            try {
                witness = universal_host_witness(k, kb);
            } catch (const UnboundedAttributesError&) {
                continue;  // vertex without finite genus/delta bounds
            }
            kb.universe.insert(witness);
            saturate(kb);
            ok = ok && kb.polarity_of(k, witness) == Polarity::no;
            ++checked;
        }
        ok = ok && checked == 4;  // every named seed vertex has finite bounds
    } catch (const std::exception& e) {
        std::cerr << "criterion 4 exception: " << e.what() << "\n";
        ok = false;
    }
    c.report(ok);
}

TEST_CASE("criterion 5: property suites") {
    Criterion c("criterion 5: confluence, torus coherence <=7, duality, canon laws, round-trip");
    bool ok = true;
    try {
        // saturation confluence across randomized rule orders, >= 20 seeds
        auto facts = [](const KnowledgeBase& kb) {
            std::set<std::tuple<KnotType, KnotType, Polarity>> out;
            for (const auto& [key, j] : kb.judgments()) out.insert({j.host, j.guest, j.polarity});
            return out;
        };
        KnowledgeBase reference = fresh_kb(seed_universe());
        saturate(reference);
        for (unsigned int run = 0; run < 20; ++run) {
            std::mt19937 rng(run);
            KnowledgeBase kb = fresh_kb(seed_universe());
            saturate(kb, &rng);
            ok = ok && facts(kb) == facts(reference);
        }

        // torus inclusion coherence for all torus pairs with parameters <= 7
        std::set<KnotType> torus_universe;
        SeedData s = seed();
        for (int p = 2; p <= 7; ++p)
            for (int q = p; q <= 7; ++q)
                if (std::gcd(p, q) == 1)
                    torus_universe.insert(s.aliases.resolve(KnotType(KnotAtom{make_torus(p, q)})));
        KnowledgeBase torus_kb = fresh_kb(torus_universe);
        torus_kb.config.torus_cap = 7;
        saturate(torus_kb);
        for (const KnotType& a : torus_kb.universe) {
            auto pq_a = torus_kb.aliases.torus_params(a);
            for (const KnotType& b : torus_kb.universe) {
                auto pq_b = torus_kb.aliases.torus_params(b);
                if (pq_a->first > pq_b->first || pq_a->second > pq_b->second) continue;
                for (const KnotType& guest : torus_kb.universe)
                    if (torus_kb.polarity_of(a, guest) == Polarity::yes)
                        ok = ok && torus_kb.polarity_of(b, guest) == Polarity::yes;
            }
        }

        // reachability duality and the Remark 5.11 check over the seed universe
        HostingQuiver q = build_quiver(reference);
        FriendshipGraph fg = friendship_graph(q);
        for (const KnotType& a : q.vertices())
            for (const KnotType& b : q.vertices()) {
                ok = ok && s_infinity(q, a).count(b) == h_infinity(q, b).count(a);
                if (friendship_distance(fg, a, b).has_value())
                    ok = ok && s_infinity(q, a).count(b) == 1 && s_infinity(q, b).count(a) == 1;
            }

        // canonicalization idempotence and sum laws over a 10-atom universe
        std::vector<KnotType> atoms = {
            named("3_1"),
            named("4_1"),
            named("5_1"),
            named("8_19"),
            KnotType(KnotAtom{make_torus(2, 7)}),
            KnotType(KnotAtom{make_torus(3, 5)}),
            KnotType(KnotAtom{make_torus(4, 5)}),
            KnotType(KnotAtom{make_slope(FiberSurface::TrefoilFiber, 2, 3)}),
            KnotType(KnotAtom{make_slope(FiberSurface::TrefoilFiber, 3, 2)}),
            KnotType(KnotAtom{make_slope(FiberSurface::FigureEightFiber, 1, 2)})};
        for (const KnotType& k : atoms) {
            KnotType once = s.aliases.resolve(k);
            ok = ok && s.aliases.resolve(once) == once;
        }
        for (const KnotType& a : atoms)
            for (const KnotType& b : atoms) {
                ok = ok && connected_sum(a, b) == connected_sum(b, a);
                for (const KnotType& d : atoms)
                    ok = ok && connected_sum(connected_sum(a, b), d) ==
                                   connected_sum(a, connected_sum(b, d));
            }

        // KB export/import round-trip, byte-exact
        std::string first = kb_to_json(reference);
        ok = ok && kb_to_json(kb_from_json(first, s)) == first;
    } catch (const std::exception& e) {
        std::cerr << "criterion 5 exception: " << e.what() << "\n";
        ok = false;
    }
    c.report(ok);
}

TEST_CASE("criterion 6: poison input aborts with exit code 2 and both chains") {
    Criterion c("criterion 6: injected Hosts(3_1,4_1)=yes aborts (exit 2, both chains printed)");
    bool ok = true;
    try {
        std::string cmd = std::string(HOSTKNOT_CLI_PATH) + " deduce --data " +
                          HOSTKNOT_DATA_FILE +
                          " --universe 3_1 --universe 4_1 --universe 5_1 --universe 8_19"
                          " --universe '3_1#3_1#3_1' --assume '3_1->4_1=yes'";
        CommandResult result = run_command(cmd);
        ok = ok && result.exit_code == 2;
        ok = ok && result.output.find("Hosts(3_1,4_1)=yes") != std::string::npos;
        ok = ok && result.output.find("Hosts(3_1,4_1)=no") != std::string::npos;
        ok = ok && result.output.find("A0 @ injected assumption") != std::string::npos;
        ok = ok && result.output.find("O1 @ Cor. 4.3") != std::string::npos;
    } catch (const std::exception& e) {
        std::cerr << "criterion 6 exception: " << e.what() << "\n";
        ok = false;
    }
    c.report(ok);
}
