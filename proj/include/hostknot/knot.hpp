#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hostknot {

// Genus-one fiber surfaces that appear as hosting surfaces.
enum class FiberSurface { TrefoilFiber, FigureEightFiber };

std::string to_string(FiberSurface f);

struct NamedAtom {
    std::string label;
    auto operator<=>(const NamedAtom&) const = default;
};

// Torus knot T(p,q), normalized so that 2 <= p <= q, gcd(p,q)=1.
struct TorusAtom {
    int p = 0;
    int q = 0;
    auto operator<=>(const TorusAtom&) const = default;
};

// Slope knot K(m,n) on a genus-one fiber surface; m,n >= 1, gcd(m,n)=1.
// (m,n) and (n,m) are kept as distinct identifiers.
struct SlopeAtom {
    FiberSurface fiber = FiberSurface::TrefoilFiber;
    int m = 0;
    int n = 0;
    auto operator<=>(const SlopeAtom&) const = default;
};

// The variant order fixes the atom total order: Named < Torus < Slope,
// then lexicographic on fields.
using KnotAtom = std::variant<NamedAtom, TorusAtom, SlopeAtom>;

struct KnotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : KnotError {
    ParseError(const std::string& msg, std::size_t position)
        : KnotError(msg + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

TorusAtom make_torus(int p, int q);
SlopeAtom make_slope(FiberSurface fiber, int m, int n);

std::string to_string(const KnotAtom& atom);

// A knot type: a non-empty multiset of atoms (connected sum), stored sorted.
class KnotType {
public:
    explicit KnotType(KnotAtom atom) : summands_{std::move(atom)} {}
    explicit KnotType(std::vector<KnotAtom> summands);

    const std::vector<KnotAtom>& summands() const { return summands_; }
    bool is_atom() const { return summands_.size() == 1; }
    std::size_t summand_count() const { return summands_.size(); }

    auto operator<=>(const KnotType&) const = default;

private:
    std::vector<KnotAtom> summands_;
};

KnotType connected_sum(const KnotType& a, const KnotType& b);
KnotType repeated_sum(const KnotType& a, int copies);

std::string to_string(const KnotType& k);

// Alias classes over atoms; each class has one canonical representative.
class AliasTable {
public:
    // Declares that every atom in `members` names the same knot type as
    // `canonical`. Conflicting classes are rejected.
    void add_class(const KnotAtom& canonical, const std::vector<KnotAtom>& members);

    KnotAtom resolve(const KnotAtom& atom) const;
    KnotType resolve(const KnotType& k) const;

    // All atoms known to name the same type as `atom` (including itself).
    std::vector<KnotAtom> alias_class(const KnotAtom& atom) const;

    // Torus parameters of a single-atom knot type, if any atom in its alias
    // class is a torus atom.
    std::optional<std::pair<int, int>> torus_params(const KnotType& k) const;

    const std::set<std::string>& known_labels() const { return labels_; }

private:
    std::map<KnotAtom, KnotAtom> canon_;
    std::map<KnotAtom, std::vector<KnotAtom>> classes_;
    std::set<std::string> labels_;
};

// Knot expression grammar: atom ('#' atom)*, where an atom is a named label
// such as `3_1`, a torus knot `T(p,q)`, or a slope knot `K[trefoil](m,n)` /
// `K[fig8](m,n)`. Named labels must be present in `known_labels`.
KnotAtom parse_atom(const std::string& text, const std::set<std::string>& known_labels);
KnotType parse_knot(const std::string& text, const std::set<std::string>& known_labels);
KnotType parse_knot(const std::string& text, const AliasTable& aliases);

// Standard torus-knot genus (p-1)(q-1)/2; used for consistency checks.
int torus_genus(int p, int q);

enum class Tri { yes, no, unknown };

std::string to_string(Tri t);
Tri tri_from_string(const std::string& s);

// Per-knot attribute record. Absent upper bounds mean +infinity.
struct KnotAttributes {
    int genus_lower = 0;
    std::optional<int> genus_upper;
    int tunnel_lower = 1;  // non-trivial knots need at least one tunnel
    std::optional<int> tunnel_upper;
    std::optional<int> delta_upper;
    Tri fibered = Tri::unknown;
    Tri positive_braid_closure = Tri::unknown;
    std::map<std::string, std::string> provenance;

    void check() const;  // enforces genus_lower <= genus_upper etc.
};

}  // namespace hostknot
