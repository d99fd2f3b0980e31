#include "hostknot/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hostknot {

using nlohmann::json;

namespace {

std::optional<int> opt_int(const json& rec, const std::string& field) {
    if (!rec.contains(field) || rec[field].is_null()) return std::nullopt;
    return rec[field].get<int>();
}

KnotAttributes attributes_from_json(const json& rec) {
    KnotAttributes attr;
    if (rec.contains("genus") && (rec.contains("genus_lower") || rec.contains("genus_upper")))
        throw KnotError("record mixes exact 'genus' with genus bounds");
    if (rec.contains("genus")) {
        attr.genus_lower = rec["genus"].get<int>();
        attr.genus_upper = attr.genus_lower;
    } else {
        if (rec.contains("genus_lower")) attr.genus_lower = rec["genus_lower"].get<int>();
        attr.genus_upper = opt_int(rec, "genus_upper");
    }
    if (rec.contains("tunnel_lower")) attr.tunnel_lower = rec["tunnel_lower"].get<int>();
    attr.tunnel_upper = opt_int(rec, "tunnel_upper");
    attr.delta_upper = opt_int(rec, "delta_upper");
    if (rec.contains("fibered")) attr.fibered = tri_from_string(rec["fibered"].get<std::string>());
    if (rec.contains("positive_braid_closure"))
        attr.positive_braid_closure =
            tri_from_string(rec["positive_braid_closure"].get<std::string>());
    if (rec.contains("provenance"))
        for (const auto& [field, src] : rec["provenance"].items())
            attr.provenance[field] = src.get<std::string>();
    attr.check();
    return attr;
}

json attributes_json(const KnotAttributes& attr) {
    json rec;
    rec["genus_lower"] = attr.genus_lower;
    rec["genus_upper"] = attr.genus_upper ? json(*attr.genus_upper) : json(nullptr);
    rec["tunnel_lower"] = attr.tunnel_lower;
    rec["tunnel_upper"] = attr.tunnel_upper ? json(*attr.tunnel_upper) : json(nullptr);
    rec["delta_upper"] = attr.delta_upper ? json(*attr.delta_upper) : json(nullptr);
    rec["fibered"] = to_string(attr.fibered);
    rec["positive_braid_closure"] = to_string(attr.positive_braid_closure);
    rec["provenance"] = attr.provenance;
    return rec;
}

}  // namespace

std::string attributes_to_json(const KnotAttributes& attr) {
    return attributes_json(attr).dump(2);
}

SeedData parse_knot_data(const std::string& json_text) {
    json doc = json::parse(json_text);
    if (!doc.is_array()) throw KnotError("knot-data file must be a JSON array of records");

    SeedData seed;
    std::set<std::string> labels;
    for (const json& rec : doc) labels.insert(rec.at("id").get<std::string>());

    for (const json& rec : doc) {
        std::string id = rec.at("id").get<std::string>();
        KnotAtom canonical = NamedAtom{id};
        std::vector<KnotAtom> members;
        if (rec.contains("aliases"))
            for (const json& alias : rec["aliases"])
                members.push_back(parse_atom(alias.get<std::string>(), labels));
        seed.aliases.add_class(canonical, members);
        seed.attributes.emplace(KnotType(canonical), attributes_from_json(rec));
    }
    return seed;
}

SeedData load_knot_data(const std::string& path) { return parse_knot_data(read_file(path)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw KnotError("cannot open file '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw KnotError("cannot write file '" + path + "'");
    out << content;
}

std::string kb_to_json(const KnowledgeBase& kb) {
    json doc;
    doc["universe"] = json::array();
    for (const KnotType& k : kb.universe) doc["universe"].push_back(to_string(k));

    doc["judgments"] = json::array();
    for (const auto& [key, j] : kb.judgments()) {
        json rec;
        rec["host"] = to_string(j.host);
        rec["guest"] = to_string(j.guest);
        rec["polarity"] = to_string(j.polarity);
        rec["provenance"] = json::array();
        for (const ProvenanceStep& step : j.provenance) {
            json s;
            s["rule_id"] = step.rule_id;
            s["citation"] = step.citation;
            s["premises"] = step.premises;
            rec["provenance"].push_back(s);
        }
        doc["judgments"].push_back(rec);
    }

    doc["attributes"] = json::object();
    for (const auto& [k, attr] : kb.attributes)
        doc["attributes"][to_string(k)] = attributes_json(attr);

    doc["config"]["sum_depth"] = kb.config.sum_depth;
    doc["config"]["slope_bound"] = kb.config.slope_bound;
    doc["config"]["torus_cap"] = kb.config.torus_cap;
    doc["config"]["enabled_rules"] = kb.config.enabled_rules;
    doc["saturated"] = kb.saturated();
    return doc.dump(2) + "\n";
}

KnowledgeBase kb_from_json(const std::string& json_text, const SeedData& seed) {
    json doc = json::parse(json_text);
    KnowledgeBase kb;
    kb.aliases = seed.aliases;

    kb.config.sum_depth = doc["config"]["sum_depth"].get<int>();
    kb.config.slope_bound = doc["config"]["slope_bound"].get<int>();
    kb.config.torus_cap = doc["config"]["torus_cap"].get<int>();
    kb.config.enabled_rules.clear();
    for (const json& id : doc["config"]["enabled_rules"])
        kb.config.enabled_rules.insert(id.get<std::string>());

    for (const json& expr : doc["universe"])
        kb.universe.insert(parse_knot(expr.get<std::string>(), kb.aliases));

    for (const auto& [expr, rec] : doc["attributes"].items())
        kb.attributes.emplace(parse_knot(expr, kb.aliases), attributes_from_json(rec));

    for (const json& rec : doc["judgments"]) {
        KnotType host = parse_knot(rec["host"].get<std::string>(), kb.aliases);
        KnotType guest = parse_knot(rec["guest"].get<std::string>(), kb.aliases);
        Polarity pol =
            rec["polarity"].get<std::string>() == "yes" ? Polarity::yes : Polarity::no;
        const json& prov = rec["provenance"];
        if (prov.empty()) throw KnotError("judgment without provenance in KB file");
        auto read_step = [](const json& s) {
            ProvenanceStep step;
            step.rule_id = s["rule_id"].get<std::string>();
            step.citation = s["citation"].get<std::string>();
            for (const json& p : s["premises"]) step.premises.push_back(p.get<std::string>());
            return step;
        };
        Judgment j(host, guest, pol, read_step(prov[0]));
        for (std::size_t i = 1; i < prov.size(); ++i) j.provenance.push_back(read_step(prov[i]));
        kb.add_judgment(std::move(j));
    }
    kb.mark_saturated(doc.value("saturated", false));
    return kb;
}

std::string quiver_to_dot(const HostingQuiver& q, bool show_negative) {
    std::ostringstream out;
    out << "digraph hosting {\n";
    for (const KnotType& v : q.vertices()) out << "  \"" << to_string(v) << "\";\n";
    for (const KnotType& a : q.vertices()) {
        for (const KnotType& b : q.vertices()) {
            EdgeLabel label = q.label(a, b);
            if (label == EdgeLabel::yes)
                out << "  \"" << to_string(a) << "\" -> \"" << to_string(b) << "\";\n";
            else if (label == EdgeLabel::no && show_negative)
                out << "  \"" << to_string(a) << "\" -> \"" << to_string(b)
                    << "\" [style=dashed, color=red];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string friendship_to_dot(const FriendshipGraph& g) {
    std::ostringstream out;
    out << "graph friendship {\n";
    for (const KnotType& v : g.vertices()) out << "  \"" << to_string(v) << "\";\n";
    for (const auto& [a, b] : g.edges())
        out << "  \"" << to_string(a) << "\" -- \"" << to_string(b) << "\";\n";
    out << "}\n";
    return out.str();
}

namespace {

json report_doc(const KnowledgeBase& kb) {
    HostingQuiver q = build_quiver(kb);
    FriendshipGraph fg = friendship_graph(q);

    json doc;
    doc["caveat"] =
        "all sets are restricted to the finite universe; unknown edges are "
        "treated as absent, so reachability sets are lower bounds and "
        "distances are upper bounds on the true values";

    doc["universe"] = json::array();
    for (const KnotType& k : kb.universe) doc["universe"].push_back(to_string(k));

    std::map<std::string, std::size_t> by_rule;
    for (const auto& [key, j] : kb.judgments()) ++by_rule[j.provenance.front().rule_id];
    doc["judgment_counts_by_rule"] = by_rule;

    doc["judgments"] = json::array();
    for (const auto& [key, j] : kb.judgments()) {
        json rec;
        rec["host"] = to_string(j.host);
        rec["guest"] = to_string(j.guest);
        rec["polarity"] = to_string(j.polarity);
        rec["rule"] = j.provenance.front().rule_id + " @ " + j.provenance.front().citation;
        doc["judgments"].push_back(rec);
    }

    doc["friendship_edges"] = json::array();
    for (const auto& [a, b] : fg.edges())
        doc["friendship_edges"].push_back({to_string(a), to_string(b)});

    doc["friendship_distances"] = json::object();
    for (const KnotType& a : q.vertices()) {
        json row = json::object();
        for (const KnotType& b : q.vertices()) {
            auto d = friendship_distance(fg, a, b);
            row[to_string(b)] = d ? json(*d) : json("inf");
        }
        doc["friendship_distances"][to_string(a)] = row;
    }

    doc["strongly_connected_components"] = json::array();
    for (const auto& comp : strongly_connected_components(q)) {
        json c = json::array();
        for (const KnotType& k : comp) c.push_back(to_string(k));
        doc["strongly_connected_components"].push_back(c);
    }

    doc["witnesses"] = json::object();
    for (const KnotType& k : kb.universe) {
        try {
            doc["witnesses"][to_string(k)] = to_string(universal_host_witness(k, kb));
        } catch (const UnboundedAttributesError&) {
            doc["witnesses"][to_string(k)] = nullptr;
        }
    }

    RigidityReport rigidity = rigidity_checks(q);
    json rj;
    rj["caveat"] = rigidity.caveat;
    rj["mutual_reachability_ok"] = rigidity.mutual_reachability_ok;
    rj["findings"] = json::array();
    for (const RigidityFinding& f : rigidity.findings)
        rj["findings"].push_back({{"a", to_string(f.a)},
                                  {"b", to_string(f.b)},
                                  {"kind", f.kind},
                                  {"proved_friends", f.proved_friends}});
    doc["rigidity"] = rj;

    doc["skip_counts"] = kb.skip_counts;
    return doc;
}

}  // namespace

std::string report_json(const KnowledgeBase& kb) { return report_doc(kb).dump(2) + "\n"; }

std::string report_text(const KnowledgeBase& kb) {
    HostingQuiver q = build_quiver(kb);
    FriendshipGraph fg = friendship_graph(q);
    std::ostringstream out;

    out << "hosting report over " << kb.universe.size() << " knot types\n";
    out << "(sets restricted to the universe; unknown edges treated as absent)\n\n";

    out << "judgments (" << kb.judgments().size() << "):\n";
    for (const auto& [key, j] : kb.judgments())
        out << "  " << judgment_key(j) << "  [" << j.provenance.front().rule_id << " @ "
            << j.provenance.front().citation << "]\n";

    out << "\nfriendship edges:\n";
    if (fg.edges().empty()) out << "  (none proved)\n";
    for (const auto& [a, b] : fg.edges())
        out << "  " << to_string(a) << " <-> " << to_string(b) << "\n";

    out << "\nstrongly connected components:\n";
    for (const auto& comp : strongly_connected_components(q)) {
        out << "  {";
        bool first = true;
        for (const KnotType& k : comp) {
            if (!first) out << ", ";
            out << to_string(k);
            first = false;
        }
        out << "}\n";
    }

    out << "\nuniversal-host counterexample witnesses:\n";
    for (const KnotType& k : kb.universe) {
        out << "  " << to_string(k) << ": ";
        try {
            out << to_string(universal_host_witness(k, kb)) << "\n";
        } catch (const UnboundedAttributesError&) {
            out << "(unbounded attributes, no witness)\n";
        }
    }

    if (!kb.skip_counts.empty()) {
        out << "\nskipped derivations:\n";
        for (const auto& [what, count] : kb.skip_counts)
            out << "  " << what << ": " << count << "\n";
    }
    return out.str();
}

std::string atlas_csv(const std::vector<AtlasRow>& rows) {
    std::ostringstream out;
    out << "m,n,genus,euler,identified_as,degenerate\n";
    for (const AtlasRow& r : rows)
        out << r.pair.m << "," << r.pair.n << "," << r.genus << "," << r.euler << ","
            << (r.identified ? to_string(*r.identified) : "") << ","
            << (r.degenerate ? "true" : "false") << "\n";
    return out.str();
}

std::string atlas_json(const std::vector<AtlasRow>& rows) {
    json doc = json::array();
    for (const AtlasRow& r : rows) {
        json rec;
        rec["m"] = r.pair.m;
        rec["n"] = r.pair.n;
        rec["genus"] = r.genus;
        rec["euler"] = r.euler;
        rec["identified_as"] = r.identified ? json(to_string(*r.identified)) : json(nullptr);
        rec["degenerate"] = r.degenerate;
        doc.push_back(rec);
    }
    return doc.dump(2) + "\n";
}

}  // namespace hostknot
