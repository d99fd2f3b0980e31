// Command-line front end for the hosting-relation deduction engine.

#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hostknot/json_io.hpp"
#include "hostknot/kb.hpp"
#include "hostknot/knot.hpp"
#include "hostknot/quiver.hpp"
#include "hostknot/slope.hpp"

namespace {

using namespace hostknot;

struct CommonOpts {
    std::string data_path = "data/knots.json";
    std::vector<std::string> universe_exprs;
    std::string universe_file;
    bool close_sums = false;
    int sum_depth = 3;
    int slope_bound = 12;
    int torus_cap = 12;
    std::vector<std::string> rule_ids;
    std::vector<std::string> assumes;
};

void add_common_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--data", opts.data_path, "knot-data JSON file")
        ->capture_default_str();
    cmd->add_option("--universe", opts.universe_exprs,
                    "knot expressions forming the universe (default: all data-file knots)");
    cmd->add_option("--universe-file", opts.universe_file,
                    "file with one knot expression per line");
    cmd->add_flag("--close-sums", opts.close_sums,
                  "close the universe under connected sums up to --sum-depth summands");
    cmd->add_option("--sum-depth", opts.sum_depth, "connected-sum depth cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--slope-bound", opts.slope_bound, "slope enumeration bound for rule R4")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--torus-cap", opts.torus_cap, "torus parameter cap for rule R3")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--rules", opts.rule_ids, "enabled rule ids (default: all)");
    cmd->add_option("--assume", opts.assumes,
                    "inject an axiom, e.g. '3_1->4_1=yes' (for consistency testing)");
}

Assumption parse_assume(const std::string& text, const AliasTable& aliases) {
    auto arrow = text.find("->");
    auto eq = text.rfind('=');
    if (arrow == std::string::npos || eq == std::string::npos || eq < arrow)
        throw KnotError("bad --assume syntax '" + text + "'; expected K->J=yes|no");
    Assumption a{parse_knot(text.substr(0, arrow), aliases),
                 parse_knot(text.substr(arrow + 2, eq - arrow - 2), aliases), Polarity::yes};
    std::string pol = text.substr(eq + 1);
    if (pol == "yes")
        a.polarity = Polarity::yes;
    else if (pol == "no")
        a.polarity = Polarity::no;
    else
        throw KnotError("bad --assume polarity '" + pol + "'");
    return a;
}

KnowledgeBase build_kb(const CommonOpts& opts, const SeedData& seed) {
    KnowledgeBase kb;
    kb.aliases = seed.aliases;
    kb.attributes = seed.attributes;
    kb.config.sum_depth = opts.sum_depth;
    kb.config.slope_bound = opts.slope_bound;
    kb.config.torus_cap = opts.torus_cap;
    if (!opts.rule_ids.empty())
        kb.config.enabled_rules =
            std::set<std::string>(opts.rule_ids.begin(), opts.rule_ids.end());

    std::vector<std::string> exprs = opts.universe_exprs;
    if (!opts.universe_file.empty()) {
        std::istringstream lines(read_file(opts.universe_file));
        std::string line;
        while (std::getline(lines, line))
            if (line.find_first_not_of(" \t\r") != std::string::npos) exprs.push_back(line);
    }
    if (exprs.empty())
        for (const std::string& label : seed.aliases.known_labels())
            exprs.push_back(label);
    for (const std::string& expr : exprs) kb.universe.insert(parse_knot(expr, kb.aliases));

    if (opts.close_sums) {
        for (;;) {
            std::set<KnotType> grown = kb.universe;
            for (const KnotType& a : kb.universe)
                for (const KnotType& b : kb.universe) {
                    KnotType sum = connected_sum(a, b);
                    if (static_cast<int>(sum.summand_count()) <= kb.config.sum_depth)
                        grown.insert(sum);
                }
            if (grown.size() == kb.universe.size()) break;
            kb.universe = std::move(grown);
        }
    }

    for (const std::string& text : opts.assumes)
        kb.assumptions.push_back(parse_assume(text, kb.aliases));
    return kb;
}

KnowledgeBase saturated_kb(const CommonOpts& opts, const SeedData& seed) {
    KnowledgeBase kb = build_kb(opts, seed);
    saturate(kb);
    return kb;
}

void print_judgment(const KnowledgeBase& kb, const KnotType& host, const KnotType& guest) {
    const Judgment* j = kb.find(host, guest);
    if (!j) {
        std::cout << "Hosts(" << to_string(host) << "," << to_string(guest) << ") = unknown\n";
        std::cout << "  (no rule in the knowledge base decides this pair)\n";
        return;
    }
    std::cout << judgment_key(*j) << "\n";
    for (const ProvenanceStep& step : j->provenance) {
        std::cout << "  via " << step.rule_id << " @ " << step.citation << "\n";
        for (const std::string& prem : step.premises) std::cout << "    from " << prem << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deduction engine and analytics for the knot hosting relation"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* atlas_cmd = app.add_subcommand("atlas", "slope-knot table for the trefoil fiber");
    int atlas_bound = 10;
    std::string atlas_format = "csv";
    std::string atlas_out;
    atlas_cmd->add_option("--bound", atlas_bound, "max slope coordinate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    atlas_cmd->add_option("--format", atlas_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    atlas_cmd->add_option("--out", atlas_out, "output file (default: stdout)");
    atlas_cmd->add_option("--data", opts.data_path, "knot-data JSON file")
        ->capture_default_str();

    auto* deduce_cmd = app.add_subcommand("deduce", "saturate a universe and print a summary");
    std::string deduce_out;
    add_common_options(deduce_cmd, opts);
    deduce_cmd->add_option("--out", deduce_out, "write the saturated KB as JSON");

    auto* query_cmd = app.add_subcommand("query", "query one hosting judgment");
    std::string query_kind, query_host, query_guest;
    query_cmd->add_option("kind", query_kind, "query kind (host)")->required();
    query_cmd->add_option("host", query_host, "host knot expression")->required();
    query_cmd->add_option("guest", query_guest, "guest knot expression")->required();
    add_common_options(query_cmd, opts);

    auto* friends_cmd = app.add_subcommand("friends", "proved friends of a knot");
    std::string friends_knot;
    friends_cmd->add_option("knot", friends_knot)->required();
    add_common_options(friends_cmd, opts);

    auto* distance_cmd = app.add_subcommand("distance", "friendship distance between two knots");
    std::string dist_a, dist_b;
    distance_cmd->add_option("from", dist_a)->required();
    distance_cmd->add_option("to", dist_b)->required();
    add_common_options(distance_cmd, opts);

    auto* reach_cmd = app.add_subcommand("reach", "iterated hosting sets of a knot");
    std::string reach_knot;
    reach_cmd->add_option("knot", reach_knot)->required();
    add_common_options(reach_cmd, opts);

    auto* witness_cmd =
        app.add_subcommand("witness", "universal-host counterexample witness for a knot");
    std::string witness_knot;
    witness_cmd->add_option("knot", witness_knot)->required();
    add_common_options(witness_cmd, opts);

    auto* dot_cmd = app.add_subcommand("export-dot", "DOT export of the hosting quiver");
    std::string dot_out = "quiver.dot";
    std::string dot_friends_out;
    bool show_negative = false;
    dot_cmd->add_option("--out", dot_out, "quiver DOT file")->capture_default_str();
    dot_cmd->add_option("--friendship-out", dot_friends_out, "friendship DOT file");
    dot_cmd->add_flag("--show-negative", show_negative, "include dashed red no-edges");
    add_common_options(dot_cmd, opts);

    auto* report_cmd = app.add_subcommand("report", "full JSON + DOT + text report");
    std::string report_prefix = "report";
    report_cmd->add_option("--out-prefix", report_prefix, "output file prefix")
        ->capture_default_str();
    add_common_options(report_cmd, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        SeedData seed = load_knot_data(opts.data_path);

        if (*atlas_cmd) {
            auto rows = slope_atlas(atlas_bound, seed.aliases);
            std::string text = atlas_format == "csv" ? atlas_csv(rows) : atlas_json(rows);
            if (atlas_out.empty())
                std::cout << text;
            else
                write_file(atlas_out, text);
            return 0;
        }

        if (*deduce_cmd) {
            KnowledgeBase kb = saturated_kb(opts, seed);
            std::cout << report_text(kb);
            if (!deduce_out.empty()) write_file(deduce_out, kb_to_json(kb));
            return 0;
        }

        if (*query_cmd) {
            if (query_kind != "host") throw KnotError("unknown query kind '" + query_kind + "'");
            KnowledgeBase kb = saturated_kb(opts, seed);
            print_judgment(kb, parse_knot(query_host, kb.aliases),
                           parse_knot(query_guest, kb.aliases));
            return 0;
        }

        if (*friends_cmd) {
            KnowledgeBase kb = saturated_kb(opts, seed);
            FriendshipGraph fg = friendship_graph(build_quiver(kb));
            KnotType k = parse_knot(friends_knot, kb.aliases);
            std::cout << "proved friends of " << to_string(k) << ":\n";
            auto friends = fg.neighbors(k);
            if (friends.empty()) std::cout << "  (none proved)\n";
            for (const KnotType& f : friends) std::cout << "  " << to_string(f) << "\n";
            return 0;
        }

        if (*distance_cmd) {
            KnowledgeBase kb = saturated_kb(opts, seed);
            FriendshipGraph fg = friendship_graph(build_quiver(kb));
            auto d = friendship_distance(fg, parse_knot(dist_a, kb.aliases),
                                         parse_knot(dist_b, kb.aliases));
            if (d)
                std::cout << *d << "  (upper bound: computed over proved edges only)\n";
            else
                std::cout << "inf  (no path over proved edges; true distance unknown)\n";
            return 0;
        }

        if (*reach_cmd) {
            KnowledgeBase kb = saturated_kb(opts, seed);
            HostingQuiver q = build_quiver(kb);
            KnotType k = parse_knot(reach_knot, kb.aliases);
            std::cout << "S-infinity(" << to_string(k) << ") within the universe:\n";
            for (const KnotType& v : s_infinity(q, k)) std::cout << "  " << to_string(v) << "\n";
            std::cout << "H-infinity(" << to_string(k) << ") within the universe:\n";
            for (const KnotType& v : h_infinity(q, k)) std::cout << "  " << to_string(v) << "\n";
            return 0;
        }

        if (*witness_cmd) {
            KnowledgeBase kb = build_kb(opts, seed);
            KnotType k = parse_knot(witness_knot, kb.aliases);
            if (!kb.universe.count(k)) kb.universe.insert(k);
            // Witness needs attribute bounds before saturation; compute it on
            // an unsaturated KB, then saturate with the witness as a vertex.
            KnotType witness = universal_host_witness(k, kb);
            kb.universe.insert(witness);
            saturate(kb);
            std::cout << "witness for " << to_string(k) << ": " << to_string(witness) << "\n";
            print_judgment(kb, k, witness);
            return 0;
        }

        if (*dot_cmd) {
            KnowledgeBase kb = saturated_kb(opts, seed);
            HostingQuiver q = build_quiver(kb);
            write_file(dot_out, quiver_to_dot(q, show_negative));
            if (!dot_friends_out.empty())
                write_file(dot_friends_out, friendship_to_dot(friendship_graph(q)));
            return 0;
        }

        if (*report_cmd) {
            KnowledgeBase kb = saturated_kb(opts, seed);
            HostingQuiver q = build_quiver(kb);
            write_file(report_prefix + ".json", report_json(kb));
            write_file(report_prefix + ".txt", report_text(kb));
            write_file(report_prefix + ".quiver.dot", quiver_to_dot(q, true));
            write_file(report_prefix + ".friends.dot", friendship_to_dot(friendship_graph(q)));
            std::cout << report_text(kb);
            return 0;
        }
    } catch (const ContradictionError& e) {
        std::cerr << "contradiction detected:\n" << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const KnotError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
