#pragma once

#include <optional>
#include <set>
#include <vector>

#include "hostknot/knot.hpp"

namespace hostknot {

struct SlopePair {
    int m = 0;
    int n = 0;
    auto operator<=>(const SlopePair&) const = default;
};

// All primitive pairs (m,n) with 1 <= m,n <= bound, in lexicographic order.
std::vector<SlopePair> enumerate_primitive_pairs(int bound);

// Genus of the slope knot K(m,n) on the trefoil fiber:
// (m^2 + n^2 + mn - 2m - 2n + 1) / 2. The numerator is always even.
int slope_genus(const SlopePair& s);

// Euler characteristic of the Seifert-algorithm surface for K(m,n):
// -m^2 - mn - n^2 + 2m + 2n. Consistent with slope_genus via g = (1-chi)/2.
int slope_euler(const SlopePair& s);

// The (1,1) slope carries a trivial knot type on the trefoil fiber; it is
// enumerated but excluded from hosting facts.
bool is_degenerate(const SlopePair& s);

// The complete set of primitive pairs with slope_genus == g. Relies on strict
// monotonicity of slope_genus in each coordinate for the frontier cutoff;
// assert_slope_genus_monotone checks that property exhaustively.
std::set<SlopePair> inverse_genus(int g);

void assert_slope_genus_monotone(int bound);

// The alias-resolved named knot for a slope, when one is recorded;
// nullopt when the slope is unidentified.
std::optional<KnotAtom> identify_slope_knot(FiberSurface fiber, const SlopePair& s,
                                            const AliasTable& aliases);

struct AtlasRow {
    SlopePair pair;
    int genus = 0;
    int euler = 0;
    std::optional<KnotAtom> identified;
    bool degenerate = false;
};

std::vector<AtlasRow> slope_atlas(int bound, const AliasTable& aliases);

}  // namespace hostknot
