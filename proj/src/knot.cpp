#include "hostknot/knot.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace hostknot {

std::string to_string(FiberSurface f) {
    switch (f) {
        case FiberSurface::TrefoilFiber: return "trefoil";
        case FiberSurface::FigureEightFiber: return "fig8";
    }
    throw KnotError("invalid FiberSurface value");
}

TorusAtom make_torus(int p, int q) {
    if (p > q) std::swap(p, q);  // T(p,q) = T(q,p)
    if (p < 2)
        throw KnotError("torus knot T(" + std::to_string(p) + "," + std::to_string(q) +
                        ") is trivial or ill-formed; need min(p,q) >= 2");
    if (std::gcd(p, q) != 1)
        throw KnotError("torus parameters (" + std::to_string(p) + "," + std::to_string(q) +
                        ") are not coprime");
    return TorusAtom{p, q};
}

SlopeAtom make_slope(FiberSurface fiber, int m, int n) {
    if (m < 1 || n < 1)
        throw KnotError("slope pair (" + std::to_string(m) + "," + std::to_string(n) +
                        ") must have m,n >= 1");
    if (std::gcd(m, n) != 1)
        throw KnotError("slope pair (" + std::to_string(m) + "," + std::to_string(n) +
                        ") is not primitive");
    return SlopeAtom{fiber, m, n};
}

std::string to_string(const KnotAtom& atom) {
    struct Printer {
        std::string operator()(const NamedAtom& a) const { return a.label; }
        std::string operator()(const TorusAtom& a) const {
            return "T(" + std::to_string(a.p) + "," + std::to_string(a.q) + ")";
        }
        std::string operator()(const SlopeAtom& a) const {
            return "K[" + to_string(a.fiber) + "](" + std::to_string(a.m) + "," +
                   std::to_string(a.n) + ")";
        }
    };
    return std::visit(Printer{}, atom);
}

KnotType::KnotType(std::vector<KnotAtom> summands) : summands_(std::move(summands)) {
    if (summands_.empty()) throw KnotError("a knot type needs at least one summand");
    std::sort(summands_.begin(), summands_.end());
}

KnotType connected_sum(const KnotType& a, const KnotType& b) {
    std::vector<KnotAtom> all = a.summands();
    all.insert(all.end(), b.summands().begin(), b.summands().end());
    return KnotType(std::move(all));
}

KnotType repeated_sum(const KnotType& a, int copies) {
    if (copies < 1) throw KnotError("repeated_sum needs at least one copy");
    std::vector<KnotAtom> all;
    for (int i = 0; i < copies; ++i)
        all.insert(all.end(), a.summands().begin(), a.summands().end());
    return KnotType(std::move(all));
}

std::string to_string(const KnotType& k) {
    std::string out;
    for (const KnotAtom& atom : k.summands()) {
        if (!out.empty()) out += "#";
        out += to_string(atom);
    }
    return out;
}

void AliasTable::add_class(const KnotAtom& canonical, const std::vector<KnotAtom>& members) {
    std::vector<KnotAtom> cls{canonical};
    cls.insert(cls.end(), members.begin(), members.end());
    for (const KnotAtom& a : cls) {
        auto it = canon_.find(a);
        if (it != canon_.end() && it->second != canonical)
            throw KnotError("alias conflict: " + to_string(a) + " already resolves to " +
                            to_string(it->second) + ", cannot also resolve to " +
                            to_string(canonical));
    }
    for (const KnotAtom& a : cls) {
        if (canon_.emplace(a, canonical).second) classes_[canonical].push_back(a);
        if (const auto* named = std::get_if<NamedAtom>(&a)) labels_.insert(named->label);
    }
}

KnotAtom AliasTable::resolve(const KnotAtom& atom) const {
    auto it = canon_.find(atom);
    return it == canon_.end() ? atom : it->second;
}

KnotType AliasTable::resolve(const KnotType& k) const {
    std::vector<KnotAtom> out;
    out.reserve(k.summand_count());
    for (const KnotAtom& a : k.summands()) out.push_back(resolve(a));
    return KnotType(std::move(out));
}

std::vector<KnotAtom> AliasTable::alias_class(const KnotAtom& atom) const {
    auto it = classes_.find(resolve(atom));
    if (it == classes_.end()) return {atom};
    return it->second;
}

std::optional<std::pair<int, int>> AliasTable::torus_params(const KnotType& k) const {
    if (!k.is_atom()) return std::nullopt;
    for (const KnotAtom& a : alias_class(k.summands().front()))
        if (const auto* torus = std::get_if<TorusAtom>(&a))
            return std::make_pair(torus->p, torus->q);
    return std::nullopt;
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    char take() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
        return text[pos++];
    }
    void expect(char c) {
        char got = take();
        if (got != c)
            throw ParseError(std::string("expected '") + c + "', got '" + got + "'", pos - 1);
    }
    int integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected an integer", pos);
        return std::stoi(text.substr(start, pos - start));
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) throw ParseError("expected a knot atom", pos);
        return text.substr(start, pos - start);
    }
};

KnotAtom parse_atom_at(Cursor& cur, const std::set<std::string>& known_labels) {
    std::size_t start = cur.pos;
    cur.skip_ws();
    if (cur.peek() == 'T' && cur.pos + 1 < cur.text.size() && cur.text[cur.pos + 1] == '(') {
        cur.take();  // T
        cur.expect('(');
        int p = cur.integer();
        cur.expect(',');
        int q = cur.integer();
        cur.expect(')');
        try {
            return make_torus(p, q);
        } catch (const KnotError& e) {
            throw ParseError(e.what(), start);
        }
    }
    if (cur.peek() == 'K' && cur.pos + 1 < cur.text.size() && cur.text[cur.pos + 1] == '[') {
        cur.take();  // K
        cur.expect('[');
        std::string fiber_name = cur.word();
        cur.expect(']');
        cur.expect('(');
        int m = cur.integer();
        cur.expect(',');
        int n = cur.integer();
        cur.expect(')');
        FiberSurface fiber;
        if (fiber_name == "trefoil")
            fiber = FiberSurface::TrefoilFiber;
        else if (fiber_name == "fig8")
            fiber = FiberSurface::FigureEightFiber;
        else
            throw ParseError("unknown fiber surface '" + fiber_name + "'", start);
        try {
            return make_slope(fiber, m, n);
        } catch (const KnotError& e) {
            throw ParseError(e.what(), start);
        }
    }
    std::string label = cur.word();
    if (!known_labels.count(label))
        throw ParseError("unknown knot label '" + label + "'", start);
    return NamedAtom{label};
}

}  // namespace

KnotAtom parse_atom(const std::string& text, const std::set<std::string>& known_labels) {
    Cursor cur{text};
    KnotAtom atom = parse_atom_at(cur, known_labels);
    if (!cur.eof()) throw ParseError("trailing input after atom", cur.pos);
    return atom;
}

KnotType parse_knot(const std::string& text, const std::set<std::string>& known_labels) {
    Cursor cur{text};
    std::vector<KnotAtom> atoms;
    atoms.push_back(parse_atom_at(cur, known_labels));
    while (!cur.eof()) {
        cur.expect('#');
        atoms.push_back(parse_atom_at(cur, known_labels));
    }
    return KnotType(std::move(atoms));
}

KnotType parse_knot(const std::string& text, const AliasTable& aliases) {
    return aliases.resolve(parse_knot(text, aliases.known_labels()));
}

int torus_genus(int p, int q) {
    TorusAtom t = make_torus(p, q);  // validates coprimality and p,q >= 2
    return (t.p - 1) * (t.q - 1) / 2;
}

std::string to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::unknown: return "unknown";
    }
    throw KnotError("invalid Tri value");
}

Tri tri_from_string(const std::string& s) {
    if (s == "yes") return Tri::yes;
    if (s == "no") return Tri::no;
    if (s == "unknown") return Tri::unknown;
    throw KnotError("invalid three-valued flag '" + s + "'");
}

void KnotAttributes::check() const {
    if (genus_lower < 0) throw KnotError("genus_lower must be non-negative");
    if (genus_upper && *genus_upper < genus_lower)
        throw KnotError("genus_lower exceeds genus_upper");
    if (tunnel_lower < 0) throw KnotError("tunnel_lower must be non-negative");
    if (tunnel_upper && (*tunnel_upper < 1 || *tunnel_upper < tunnel_lower))
        throw KnotError("tunnel bounds are inconsistent");
    if (delta_upper && *delta_upper < 0) throw KnotError("delta_upper must be non-negative");
}

}  // namespace hostknot
