#pragma once

#include <string>
#include <vector>

#include "hostknot/kb.hpp"
#include "hostknot/quiver.hpp"

namespace hostknot {

struct SeedData {
    AliasTable aliases;
    std::map<KnotType, KnotAttributes> attributes;
};

// Knot-data JSON: array of records {id, aliases[], genus, tunnel_lower,
// tunnel_upper, delta_upper, fibered, positive_braid_closure, provenance{}}.
// Missing upper bounds and delta_upper mean +infinity.
SeedData load_knot_data(const std::string& path);
SeedData parse_knot_data(const std::string& json_text);

// KB persistence: {universe[], judgments[{host,guest,polarity,provenance[]}],
// attributes{}}. Serialization is key-sorted and whitespace-stable, so
// export-import-export is byte-exact.
std::string kb_to_json(const KnowledgeBase& kb);
KnowledgeBase kb_from_json(const std::string& json_text, const SeedData& seed);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// DOT export of the hosting quiver: yes-edges solid, no-edges dashed red
// (only with show_negative), unknown omitted.
std::string quiver_to_dot(const HostingQuiver& q, bool show_negative);
std::string friendship_to_dot(const FriendshipGraph& g);

std::string attributes_to_json(const KnotAttributes& attr);

// Full analysis report over a saturated KB: judgment counts by rule,
// friendship edges, distance matrix, SCCs, per-vertex witnesses, skip metrics.
std::string report_json(const KnowledgeBase& kb);
std::string report_text(const KnowledgeBase& kb);

std::string atlas_csv(const std::vector<AtlasRow>& rows);
std::string atlas_json(const std::vector<AtlasRow>& rows);

}  // namespace hostknot
