#include "hostknot/kb.hpp"

#include <algorithm>
#include <functional>

namespace hostknot {

std::string to_string(Polarity p) { return p == Polarity::yes ? "yes" : "no"; }

std::string judgment_key(const KnotType& host, const KnotType& guest, Polarity p) {
    return "Hosts(" + to_string(host) + "," + to_string(guest) + ")=" + to_string(p);
}

std::string judgment_key(const Judgment& j) { return judgment_key(j.host, j.guest, j.polarity); }

namespace {

std::string describe_chain(const Judgment& j) {
    std::string out = judgment_key(j);
    for (const ProvenanceStep& step : j.provenance) {
        out += "\n  via " + step.rule_id + " @ " + step.citation;
        for (const std::string& prem : step.premises) out += "\n    from " + prem;
    }
    return out;
}

}  // namespace

ContradictionError::ContradictionError(Judgment existing_j, Judgment incoming_j)
    : KnotError("contradiction on pair (" + to_string(existing_j.host) + "," +
                to_string(existing_j.guest) + "):\n" + describe_chain(existing_j) + "\n" +
                describe_chain(incoming_j)),
      existing(std::move(existing_j)),
      incoming(std::move(incoming_j)) {}

std::set<std::string> RuleConfig::all_rule_ids() {
    return {"R1", "R2", "R3", "R4", "R5", "O1", "O2", "O3", "D1"};
}

bool KnowledgeBase::add_judgment(Judgment j) {
    if (!universe.count(j.host) || !universe.count(j.guest))
        throw KnotError("judgment " + judgment_key(j) + " refers outside the universe");
    auto key = std::make_pair(j.host, j.guest);
    auto it = judgments_.find(key);
    if (it != judgments_.end()) {
        if (it->second.polarity != j.polarity)
            throw ContradictionError(it->second, std::move(j));
        return false;
    }
    judgments_.emplace(std::move(key), std::move(j));
    saturated_ = false;
    return true;
}

const Judgment* KnowledgeBase::find(const KnotType& host, const KnotType& guest) const {
    auto it = judgments_.find(std::make_pair(host, guest));
    return it == judgments_.end() ? nullptr : &it->second;
}

std::optional<Polarity> KnowledgeBase::polarity_of(const KnotType& host,
                                                   const KnotType& guest) const {
    const Judgment* j = find(host, guest);
    if (!j) return std::nullopt;
    return j->polarity;
}

KnotAttributes KnowledgeBase::attributes_of(const KnotType& k) const {
    auto it = attributes.find(k);
    if (it != attributes.end()) return it->second;
    return KnotAttributes{};
}

std::optional<KnotType> KnowledgeBase::trefoil_vertex() const {
    KnotType tref(aliases.resolve(KnotAtom{make_torus(2, 3)}));
    if (universe.count(tref)) return tref;
    return std::nullopt;
}

namespace {

// Exact genus of a single atom when computable without a data record.
std::optional<int> formula_genus(const KnotAtom& atom) {
    if (const auto* torus = std::get_if<TorusAtom>(&atom)) return torus_genus(torus->p, torus->q);
    if (const auto* slope = std::get_if<SlopeAtom>(&atom)) {
        if (slope->fiber == FiberSurface::TrefoilFiber)
            return slope_genus({slope->m, slope->n});
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::pair<int, std::optional<int>>> genus_bounds_opt(const KnotType& k,
                                                                   const KnowledgeBase& kb) {
    int lower = 0;
    std::optional<int> upper = 0;
    for (const KnotAtom& raw : k.summands()) {
        KnotType atom(kb.aliases.resolve(raw));
        auto it = kb.attributes.find(atom);
        if (it != kb.attributes.end()) {
            lower += it->second.genus_lower;
            if (upper && it->second.genus_upper)
                upper = *upper + *it->second.genus_upper;
            else
                upper = std::nullopt;
            continue;
        }
        std::optional<int> g = formula_genus(atom.summands().front());
        if (!g) return std::nullopt;
        lower += *g;
        if (upper) upper = *upper + *g;
    }
    return std::make_pair(lower, upper);
}

std::pair<int, std::optional<int>> genus_bounds(const KnotType& k, const KnowledgeBase& kb) {
    auto bounds = genus_bounds_opt(k, kb);
    if (!bounds) {
        for (const KnotAtom& raw : k.summands()) {
            KnotType atom(kb.aliases.resolve(raw));
            if (!kb.attributes.count(atom) && !formula_genus(atom.summands().front()))
                throw MissingAttributeError(atom);
        }
        throw MissingAttributeError(k);
    }
    return *bounds;
}

std::size_t seed_reflexivity(KnowledgeBase& kb) {
    std::size_t added = 0;
    for (const KnotType& k : kb.universe)
        if (kb.add_judgment(Judgment(k, k, Polarity::yes, {"R1", {}, "Prop. 2.3"}))) ++added;
    return added;
}

std::size_t rule_connected_sum(KnowledgeBase& kb) {
    std::vector<const Judgment*> yes_facts;
    for (const auto& [key, j] : kb.judgments())
        if (j.polarity == Polarity::yes) yes_facts.push_back(&j);
    std::size_t added = 0;
    for (const Judgment* a : yes_facts) {
        for (const Judgment* b : yes_facts) {
            KnotType host = connected_sum(a->host, b->host);
            KnotType guest = connected_sum(a->guest, b->guest);
            if (!kb.universe.count(host) || !kb.universe.count(guest)) {
                ++kb.skip_counts["R2 conclusion outside universe"];
                continue;
            }
            if (kb.add_judgment(Judgment(host, guest, Polarity::yes,
                                         {"R2", {judgment_key(*a), judgment_key(*b)},
                                          "Prop. 2.4"})))
                ++added;
        }
    }
    return added;
}

std::size_t rule_torus_monotone(KnowledgeBase& kb) {
    std::vector<std::pair<KnotType, std::pair<int, int>>> torus_vertices;
    for (const KnotType& v : kb.universe)
        if (auto pq = kb.aliases.torus_params(v)) torus_vertices.emplace_back(v, *pq);

    std::vector<const Judgment*> yes_facts;
    for (const auto& [key, j] : kb.judgments())
        if (j.polarity == Polarity::yes) yes_facts.push_back(&j);

    std::size_t added = 0;
    for (const Judgment* j : yes_facts) {
        auto pq = kb.aliases.torus_params(j->host);
        if (!pq) continue;
        for (const auto& [vertex, pq2] : torus_vertices) {
            if (pq->first > pq2.first || pq->second > pq2.second) continue;
            if (pq2.first > kb.config.torus_cap || pq2.second > kb.config.torus_cap) {
                ++kb.skip_counts["R3 torus parameters above cap"];
                continue;
            }
            if (kb.add_judgment(Judgment(vertex, j->guest, Polarity::yes,
                                         {"R3", {judgment_key(*j)}, "Prop. 5.1"})))
                ++added;
        }
    }
    return added;
}

std::size_t rule_trefoil_slopes(KnowledgeBase& kb) {
    auto trefoil = kb.trefoil_vertex();
    if (!trefoil) return 0;
    std::size_t added = 0;
    for (const SlopePair& s : enumerate_primitive_pairs(kb.config.slope_bound)) {
        if (is_degenerate(s)) continue;  // the (1,1) slope carries the trivial knot
        KnotType guest(kb.aliases.resolve(KnotAtom{make_slope(FiberSurface::TrefoilFiber, s.m, s.n)}));
        if (!kb.universe.count(guest)) {
            ++kb.skip_counts["R4 slope knot outside universe"];
            continue;
        }
        std::string citation = "Prop. 4.1, slope (" + std::to_string(s.m) + "," +
                               std::to_string(s.n) + ")";
        if (kb.add_judgment(Judgment(*trefoil, guest, Polarity::yes, {"R4", {}, citation})))
            ++added;
    }
    return added;
}

std::size_t rule_figure_eight(KnowledgeBase& kb) {
    KnotType fig8(kb.aliases.resolve(KnotAtom{NamedAtom{"4_1"}}));
    KnotType trefoil(kb.aliases.resolve(KnotAtom{make_torus(2, 3)}));
    if (!kb.universe.count(fig8) || !kb.universe.count(trefoil)) return 0;
    return kb.add_judgment(Judgment(fig8, trefoil, Polarity::yes, {"R5", {}, "Prop. 5.5"}))
               ? 1
               : 0;
}

std::size_t obstruction_positive_braid(KnowledgeBase& kb) {
    auto trefoil = kb.trefoil_vertex();
    if (!trefoil) return 0;
    std::size_t added = 0;
    for (const KnotType& guest : kb.universe) {
        if (kb.attributes_of(guest).positive_braid_closure != Tri::no) continue;
        if (kb.add_judgment(Judgment(*trefoil, guest, Polarity::no, {"O1", {}, "Cor. 4.3"})))
            ++added;
    }
    return added;
}

std::size_t obstruction_trefoil_genus(KnowledgeBase& kb) {
    auto trefoil = kb.trefoil_vertex();
    if (!trefoil) return 0;
    std::size_t added = 0;
    for (const KnotType& guest : kb.universe) {
        auto bounds = genus_bounds_opt(guest, kb);
        if (!bounds || !bounds->second || bounds->first != *bounds->second) continue;
        const int g = bounds->first;
        std::set<SlopePair> pairs = inverse_genus(g);
        std::erase_if(pairs, [](const SlopePair& s) { return is_degenerate(s); });
        if (!pairs.empty()) continue;
        std::string citation = "Cor. 4.4, no slope of genus " + std::to_string(g);
        if (kb.add_judgment(Judgment(*trefoil, guest, Polarity::no, {"O2", {}, citation})))
            ++added;
    }
    return added;
}

std::size_t obstruction_tunnel_bound(KnowledgeBase& kb) {
    std::size_t added = 0;
    for (const KnotType& host : kb.universe) {
        std::optional<int> delta = kb.attributes_of(host).delta_upper;
        if (!delta) continue;
        auto bounds = genus_bounds_opt(host, kb);
        if (!bounds || !bounds->second) continue;
        const int cap = 2 * *bounds->second + *delta;
        for (const KnotType& guest : kb.universe) {
            const int tl = kb.attributes_of(guest).tunnel_lower;
            if (tl <= cap) continue;  // bound must be strict
            std::string citation = "Cor. 3.10 / Thm. 3.11: t(J) >= " + std::to_string(tl) +
                                   " > 2g(K)+Delta(K) = " + std::to_string(cap);
            if (kb.add_judgment(Judgment(host, guest, Polarity::no, {"O3", {}, citation})))
                ++added;
        }
    }
    return added;
}

std::size_t derive_tunnel_lower_sums(KnowledgeBase& kb) {
    std::size_t improved = 0;
    for (const KnotType& k : kb.universe) {
        const int n = static_cast<int>(k.summand_count());
        if (n < 2) continue;
        KnotAttributes& attr = kb.attributes[k];
        if (attr.tunnel_lower >= n) continue;
        attr.tunnel_lower = n;
        attr.provenance["tunnel_lower"] = "D1 @ Scharlemann-Schultens (Thm. 3.11 proof)";
        ++improved;
    }
    return improved;
}

namespace {

using RuleFn = std::size_t (*)(KnowledgeBase&);

const std::vector<std::pair<std::string, RuleFn>>& rule_registry() {
    static const std::vector<std::pair<std::string, RuleFn>> rules = {
        {"R1", seed_reflexivity},       {"R2", rule_connected_sum},
        {"R3", rule_torus_monotone},    {"R4", rule_trefoil_slopes},
        {"R5", rule_figure_eight},      {"O1", obstruction_positive_braid},
        {"O2", obstruction_trefoil_genus}, {"O3", obstruction_tunnel_bound},
        {"D1", derive_tunnel_lower_sums}};
    return rules;
}

}  // namespace

void saturate(KnowledgeBase& kb, std::mt19937* rng) {
    for (const std::string& id : kb.config.enabled_rules)
        if (std::none_of(rule_registry().begin(), rule_registry().end(),
                         [&](const auto& r) { return r.first == id; }))
            throw KnotError("unknown rule id '" + id + "'");

    kb.skip_counts.clear();
    for (const Assumption& a : kb.assumptions)
        kb.add_judgment(Judgment(a.host, a.guest, a.polarity, {"A0", {}, "injected assumption"}));

    std::vector<std::pair<std::string, RuleFn>> enabled;
    for (const auto& rule : rule_registry())
        if (kb.config.enabled_rules.count(rule.first)) enabled.push_back(rule);

    for (;;) {
        if (rng) std::shuffle(enabled.begin(), enabled.end(), *rng);
        std::size_t changed = 0;
        for (const auto& [id, fn] : enabled) changed += fn(kb);
        if (changed == 0) break;
    }

    // Final confirmation pass; it also leaves skip_counts counting each
    // skipped derivation exactly once.
    kb.skip_counts.clear();
    for (const auto& [id, fn] : enabled)
        if (fn(kb) != 0) throw KnotError("saturation did not reach a fixed point");
    kb.mark_saturated(true);
}

KnotType universal_host_witness(const KnotType& k, const KnowledgeBase& kb) {
    auto bounds = genus_bounds_opt(k, kb);
    if (!bounds || !bounds->second)
        throw UnboundedAttributesError("universal_host_witness(" + to_string(k) +
                                       "): genus upper bound is not finite");
    std::optional<int> delta = kb.attributes_of(k).delta_upper;
    if (!delta)
        throw UnboundedAttributesError("universal_host_witness(" + to_string(k) +
                                       "): delta_upper is not finite");
    const int copies = 2 * *bounds->second + *delta + 1;
    KnotType trefoil(kb.aliases.resolve(KnotAtom{make_torus(2, 3)}));
    return repeated_sum(trefoil, copies);
}

ExistentialRecord lyon_existence(const KnotType& j, const KnowledgeBase& kb) {
    ExistentialRecord rec{j,
                          "there exists a torus knot T with " + to_string(j) +
                              " in S(T) (Thm. 3.1, Lyon; non-constructive)",
                          std::nullopt};
    for (const auto& [key, judgment] : kb.judgments()) {
        if (judgment.polarity != Polarity::yes || judgment.guest != j) continue;
        if (kb.aliases.torus_params(judgment.host)) {
            rec.concrete_witness = judgment_key(judgment);
            break;
        }
    }
    return rec;
}

namespace {

const Judgment& premise_by_key(const KnowledgeBase& kb, const std::string& key) {
    for (const auto& [k, j] : kb.judgments())
        if (judgment_key(j) == key) return j;
    throw KnotError("provenance premise '" + key + "' is not in the knowledge base");
}

void check_step(const KnowledgeBase& kb, const ProvenanceStep& step, const Judgment& j,
                const std::vector<const Judgment*>& premises) {
    auto fail = [&](const std::string& why) {
        throw KnotError("invalid " + step.rule_id + " step for " + judgment_key(j) + ": " + why);
    };
    auto trefoil = kb.trefoil_vertex();
    if (step.rule_id == "R1") {
        if (!premises.empty() || j.host != j.guest || j.polarity != Polarity::yes)
            fail("reflexivity step malformed");
    } else if (step.rule_id == "R2") {
        if (premises.size() != 2) fail("needs two premises");
        if (premises[0]->polarity != Polarity::yes || premises[1]->polarity != Polarity::yes)
            fail("premises must be positive");
        if (j.host != connected_sum(premises[0]->host, premises[1]->host) ||
            j.guest != connected_sum(premises[0]->guest, premises[1]->guest) ||
            j.polarity != Polarity::yes)
            fail("conclusion is not the summed judgment");
    } else if (step.rule_id == "R3") {
        if (premises.size() != 1 || premises[0]->polarity != Polarity::yes)
            fail("needs one positive premise");
        auto from = kb.aliases.torus_params(premises[0]->host);
        auto to = kb.aliases.torus_params(j.host);
        if (!from || !to || from->first > to->first || from->second > to->second)
            fail("torus parameters do not increase");
        if (j.guest != premises[0]->guest || j.polarity != Polarity::yes)
            fail("guest must be preserved");
    } else if (step.rule_id == "R4") {
        if (!premises.empty() || !trefoil || j.host != *trefoil || j.polarity != Polarity::yes)
            fail("host must be the trefoil");
        bool found = false;
        for (const SlopePair& s : enumerate_primitive_pairs(kb.config.slope_bound)) {
            if (is_degenerate(s)) continue;
            KnotType guest(
                kb.aliases.resolve(KnotAtom{make_slope(FiberSurface::TrefoilFiber, s.m, s.n)}));
            if (guest == j.guest) {
                found = true;
                break;
            }
        }
        if (!found) fail("guest is not a slope knot within the configured bound");
    } else if (step.rule_id == "R5") {
        KnotType fig8(kb.aliases.resolve(KnotAtom{NamedAtom{"4_1"}}));
        if (!premises.empty() || !trefoil || j.host != fig8 || j.guest != *trefoil ||
            j.polarity != Polarity::yes)
            fail("must be Hosts(4_1,3_1)=yes");
    } else if (step.rule_id == "O1") {
        if (!premises.empty() || !trefoil || j.host != *trefoil || j.polarity != Polarity::no)
            fail("host must be the trefoil, polarity no");
        if (kb.attributes_of(j.guest).positive_braid_closure != Tri::no)
            fail("guest is not flagged as a non-positive-braid closure");
    } else if (step.rule_id == "O2") {
        if (!premises.empty() || !trefoil || j.host != *trefoil || j.polarity != Polarity::no)
            fail("host must be the trefoil, polarity no");
        auto bounds = genus_bounds_opt(j.guest, kb);
        if (!bounds || !bounds->second || bounds->first != *bounds->second)
            fail("guest genus is not exact");
        std::set<SlopePair> pairs = inverse_genus(bounds->first);
        std::erase_if(pairs, [](const SlopePair& s) { return is_degenerate(s); });
        if (!pairs.empty()) fail("a slope knot of matching genus exists");
    } else if (step.rule_id == "O3") {
        if (!premises.empty() || j.polarity != Polarity::no) fail("polarity must be no");
        auto bounds = genus_bounds_opt(j.host, kb);
        std::optional<int> delta = kb.attributes_of(j.host).delta_upper;
        if (!bounds || !bounds->second || !delta) fail("host bounds are not finite");
        if (kb.attributes_of(j.guest).tunnel_lower <= 2 * *bounds->second + *delta)
            fail("tunnel bound is not exceeded");
    } else if (step.rule_id == "A0") {
        bool found = std::any_of(kb.assumptions.begin(), kb.assumptions.end(),
                                 [&](const Assumption& a) {
                                     return a.host == j.host && a.guest == j.guest &&
                                            a.polarity == j.polarity;
                                 });
        if (!premises.empty() || !found) fail("not a declared assumption");
    } else {
        fail("unknown rule id");
    }
}

void replay_impl(const KnowledgeBase& kb, const Judgment& j, std::set<std::string>& in_progress) {
    std::string key = judgment_key(j);
    if (!in_progress.insert(key).second)
        throw KnotError("provenance cycle through " + key);
    for (const ProvenanceStep& step : j.provenance) {
        std::vector<const Judgment*> premises;
        for (const std::string& prem : step.premises) {
            const Judgment& p = premise_by_key(kb, prem);
            replay_impl(kb, p, in_progress);
            premises.push_back(&p);
        }
        check_step(kb, step, j, premises);
    }
    in_progress.erase(key);
}

}  // namespace

void replay_provenance(const KnowledgeBase& kb, const Judgment& j) {
    std::set<std::string> in_progress;
    replay_impl(kb, j, in_progress);
}

}  // namespace hostknot
