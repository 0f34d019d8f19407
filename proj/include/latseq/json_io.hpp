#pragma once

#include <json.hpp>

#include "latseq/enumerate.hpp"
#include "latseq/errors.hpp"
#include "latseq/lattice.hpp"
#include "latseq/sequence.hpp"
#include "latseq/upset.hpp"

namespace latseq {

using Json = nlohmann::ordered_json;

/// {"elements": [...], "leq": [[a,b], ...]} with the full closed relation;
/// emission is deterministic and re-parses to the same lattice.
Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);

/// A lattice reference: either a catalog name string or an inline object.
std::shared_ptr<const Lattice> lattice_from_spec(const Json& j);

/// {"m": int, "generators": [[int,...], ...]}
Json upset_to_json(const UpwardClosedSet& u);
UpwardClosedSet upset_from_json(const Json& j);

/// {"lattice": <object|name>, "levels": {"<element>": <upset>, ...}}
Json presentation_to_json(const SequencePresentation& p);
SequencePresentation presentation_from_json(const Json& j);

/// {"lattice": <object|name>, "T": int, "values": [{"vector": [...], "value": "<element>"}]}
Json table_to_json(const TruncatedTable& t);
TruncatedTable table_from_json(const Json& j);

/// Distinguishes the two sequence file shapes. Throws BadInput.
bool is_table_json(const Json& j);

Json report_to_json(const AdmissibilityReport& r);
Json classification_to_json(const Classification& c);
Json poset_report_to_json(const PosetReport& r);
Json central_series_to_json(const Lattice& l, const CentralSeries& s);
Json error_to_json(const Error& e);

/// Parses a file; IO and syntax problems come back as BadInput.
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

} // namespace latseq
