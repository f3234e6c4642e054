#pragma once

// JSON documents for categories, diagrams, presheaves, graphs, Rec frontiers
// and certificates. Dumps are canonical: sorted keys, two-space indent,
// trailing newline.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "siftcat/decompose.hpp"

namespace siftcat {

using Json = nlohmann::json;

std::string canonical_dump(const Json& j);
// Throws ParseError (with byte offset or path).
Json parse_json(const std::string& text);
Json load_json(const std::filesystem::path& path);
void save_text(const std::filesystem::path& path, const std::string& text);

// Readers throw ParseError for malformed structure and ValidationError (or a
// more specific kind) naming the offending field.
Json category_to_json(const FinCat& c);
FinCat category_from_json(const Json& j);

Json diagram_to_json(const SetDiagram& d);  // embeds the shape
SetDiagram diagram_from_json(const Json& j);

Json presheaf_to_json(const Presheaf& p);  // embeds the base
Presheaf presheaf_from_json(const Json& j);

Json graph_to_json(const FinCat& c, const GraphOnObject& g);
GraphOnObject graph_from_json(const FinCat& c, const Json& j);

Json frontier_to_json(const FinCat& c, const RecEnumeration& e, std::size_t depth);

Json certificate_to_json(const DecompositionCertificate& cert);
DecompositionCertificate certificate_from_json(const Json& j);

// FNV-1a digest (hex) of the canonical {shape, diagram} document.
std::string input_digest(const SetDiagram& d);

// Document kind ("category", "diagram", ...), or empty.
std::string document_kind(const Json& j);

}  // namespace siftcat
