#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hostknot/knot.hpp"
#include "hostknot/slope.hpp"

namespace hostknot {

enum class Polarity { yes, no };

std::string to_string(Polarity p);

// One derivation step. Premises reference earlier judgments by their key
// string (see judgment_key); axioms and base rules have no premises.
struct ProvenanceStep {
    std::string rule_id;
    std::vector<std::string> premises;
    std::string citation;
};

struct Judgment {
    KnotType host;
    KnotType guest;
    Polarity polarity;
    std::vector<ProvenanceStep> provenance;

    Judgment(KnotType h, KnotType g, Polarity p, ProvenanceStep step)
        : host(std::move(h)), guest(std::move(g)), polarity(p), provenance{std::move(step)} {}
};

std::string judgment_key(const KnotType& host, const KnotType& guest, Polarity p);
std::string judgment_key(const Judgment& j);

// A (host,guest) pair acquired both polarities; carries both derivations.
struct ContradictionError : KnotError {
    ContradictionError(Judgment existing_j, Judgment incoming_j);
    Judgment existing;
    Judgment incoming;
};

struct MissingAttributeError : KnotError {
    explicit MissingAttributeError(const KnotType& k)
        : KnotError("no genus data for atom '" + to_string(k) + "'") {}
};

struct UnboundedAttributesError : KnotError {
    using KnotError::KnotError;
};

struct RuleConfig {
    std::set<std::string> enabled_rules = all_rule_ids();
    int sum_depth = 3;
    int slope_bound = 12;
    int torus_cap = 12;

    static std::set<std::string> all_rule_ids();
};

// Facts injected from outside the rule set (used for poison-input testing).
struct Assumption {
    KnotType host;
    KnotType guest;
    Polarity polarity;
};

class KnowledgeBase {
public:
    std::set<KnotType> universe;
    std::map<KnotType, KnotAttributes> attributes;
    AliasTable aliases;
    RuleConfig config;
    std::vector<Assumption> assumptions;
    std::map<std::string, std::size_t> skip_counts;

    // Returns true if a new judgment was recorded; throws ContradictionError
    // on a polarity clash. Re-derivations of an existing judgment are no-ops.
    bool add_judgment(Judgment j);

    const Judgment* find(const KnotType& host, const KnotType& guest) const;
    std::optional<Polarity> polarity_of(const KnotType& host, const KnotType& guest) const;

    const std::map<std::pair<KnotType, KnotType>, Judgment>& judgments() const {
        return judgments_;
    }

    bool saturated() const { return saturated_; }
    void mark_saturated(bool v) { saturated_ = v; }

    // Attribute record for a knot type, falling back to defaults for types
    // without an explicit record.
    KnotAttributes attributes_of(const KnotType& k) const;

    // The canonical vertex named by the trefoil, if present in the universe.
    std::optional<KnotType> trefoil_vertex() const;

private:
    std::map<std::pair<KnotType, KnotType>, Judgment> judgments_;
    bool saturated_ = false;
};

// Genus bounds by additivity over summands; atoms take their genus from the
// attribute table, or from torus_genus / slope_genus when computable.
// The optional upper bound is absent when some summand's genus is unbounded.
std::pair<int, std::optional<int>> genus_bounds(const KnotType& k, const KnowledgeBase& kb);

// Non-throwing variant: nullopt when an atom has no genus data at all.
std::optional<std::pair<int, std::optional<int>>> genus_bounds_opt(const KnotType& k,
                                                                   const KnowledgeBase& kb);

// Deduction rules. Each returns the number of new judgments (or attribute
// improvements, for D1) and is monotone: it only ever adds facts.
std::size_t seed_reflexivity(KnowledgeBase& kb);          // R1
std::size_t rule_connected_sum(KnowledgeBase& kb);        // R2
std::size_t rule_torus_monotone(KnowledgeBase& kb);       // R3
std::size_t rule_trefoil_slopes(KnowledgeBase& kb);       // R4
std::size_t rule_figure_eight(KnowledgeBase& kb);         // R5
std::size_t obstruction_positive_braid(KnowledgeBase& kb);  // O1
std::size_t obstruction_trefoil_genus(KnowledgeBase& kb);   // O2
std::size_t obstruction_tunnel_bound(KnowledgeBase& kb);    // O3
std::size_t derive_tunnel_lower_sums(KnowledgeBase& kb);    // D1

// Applies assumptions and all enabled rules to a fixed point. Rule order per
// pass is shuffled when an RNG is supplied; the result is order-independent.
void saturate(KnowledgeBase& kb, std::mt19937* rng = nullptr);

// The connected sum of 2*genus_upper(K) + delta_upper(K) + 1 trefoils; the
// saturated KB over a universe containing it proves Hosts(K, witness) = no.
KnotType universal_host_witness(const KnotType& k, const KnowledgeBase& kb);

// Non-constructive existence of a torus-knot host (Lyon). Records any
// concrete torus host the KB already proves, but never adds a judgment.
struct ExistentialRecord {
    KnotType guest;
    std::string statement;
    std::optional<std::string> concrete_witness;  // judgment key, when known
};

ExistentialRecord lyon_existence(const KnotType& j, const KnowledgeBase& kb);

// Replays a judgment's provenance chain from axioms, verifying each step
// against its rule; throws on any invalid step or broken premise reference.
void replay_provenance(const KnowledgeBase& kb, const Judgment& j);

}  // namespace hostknot
