#include "hostknot/slope.hpp"

#include <numeric>
#include <string>

namespace hostknot {

std::vector<SlopePair> enumerate_primitive_pairs(int bound) {
    std::vector<SlopePair> pairs;
    for (int m = 1; m <= bound; ++m)
        for (int n = 1; n <= bound; ++n)
            if (std::gcd(m, n) == 1) pairs.push_back({m, n});
    return pairs;
}

int slope_genus(const SlopePair& s) {
    const int m = s.m, n = s.n;
    const int numerator = m * m + n * n + m * n - 2 * m - 2 * n + 1;
    if (numerator % 2 != 0)
        throw KnotError("slope_genus numerator is odd for (" + std::to_string(m) + "," +
                        std::to_string(n) + "); pair is not primitive");
    return numerator / 2;
}

int slope_euler(const SlopePair& s) {
    const int m = s.m, n = s.n;
    return -m * m - m * n - n * n + 2 * m + 2 * n;
}

bool is_degenerate(const SlopePair& s) { return s.m == 1 && s.n == 1; }

namespace {
// Twice the genus formula; defined for all positive pairs, not just primitive
// ones, so the frontier scan can use it without gcd guards.
int genus_numerator(int m, int n) {
    return m * m + n * n + m * n - 2 * m - 2 * n + 1;
}
}  // namespace

std::set<SlopePair> inverse_genus(int g) {
    if (g < 0) return {};
    std::set<SlopePair> out;
    // The numerator is strictly increasing in each coordinate (difference in m
    // is 2m+n-1 >= 2), so each row and the row frontier terminate once the
    // value exceeds 2g.
    for (int n = 1; genus_numerator(1, n) <= 2 * g; ++n) {
        for (int m = 1; genus_numerator(m, n) <= 2 * g; ++m) {
            if (genus_numerator(m, n) == 2 * g && std::gcd(m, n) == 1) out.insert({m, n});
        }
    }
    return out;
}

void assert_slope_genus_monotone(int bound) {
    for (int m = 1; m <= bound; ++m) {
        for (int n = 1; n <= bound; ++n) {
            if (std::gcd(m, n) != 1) continue;
            // Compare against the raw numerator to sidestep primitivity of neighbors.
            auto raw = [](int a, int b) { return a * a + b * b + a * b - 2 * a - 2 * b + 1; };
            if (raw(m + 1, n) <= raw(m, n) || raw(m, n + 1) <= raw(m, n))
                throw KnotError("slope genus monotonicity fails at (" + std::to_string(m) +
                                "," + std::to_string(n) + ")");
        }
    }
}

std::optional<KnotAtom> identify_slope_knot(FiberSurface fiber, const SlopePair& s,
                                            const AliasTable& aliases) {
    KnotAtom atom = make_slope(fiber, s.m, s.n);
    KnotAtom resolved = aliases.resolve(atom);
    if (std::holds_alternative<NamedAtom>(resolved)) return resolved;
    return std::nullopt;
}

std::vector<AtlasRow> slope_atlas(int bound, const AliasTable& aliases) {
    std::vector<AtlasRow> rows;
    for (const SlopePair& s : enumerate_primitive_pairs(bound)) {
        AtlasRow row;
        row.pair = s;
        row.genus = slope_genus(s);
        row.euler = slope_euler(s);
        row.identified = identify_slope_knot(FiberSurface::TrefoilFiber, s, aliases);
        row.degenerate = is_degenerate(s);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace hostknot
