#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "decaynet/capacity.hpp"
#include "decaynet/decay_space.hpp"
#include "decaynet/generators.hpp"
#include "decaynet/link_system.hpp"
#include "decaynet/space_analysis.hpp"

namespace decaynet::io {

using json = nlohmann::json;

/// Malformed file or document; `where` names the offending location.
class FormatError : public Error {
 public:
  FormatError(const std::string& where, const std::string& what) : Error(where + ": " + what) {}
};

// Decay spaces: {"mode": "node-space"|"link-gain", "n": int, "labels": [..]?, "f": [[..]]}
DecaySpace space_from_json(const json& doc, const std::string& where = "space");
json to_json(const DecaySpace& space);
/// n rows of n comma-separated reals; node-space mode.
DecaySpace space_from_csv(const std::string& text, const std::string& where = "csv");
/// Dispatches on extension (.csv) or content.
DecaySpace load_space(const std::filesystem::path& path);

// Link systems: {"space": <object or path>, "links": [[s,r]..], "beta", "noise",
//                "power": {"kind":"uniform","P":x} | {"kind":"explicit","P":[..]}}
LinkSystem system_from_json(const json& doc, const std::filesystem::path& base_dir = {},
                            const std::string& where = "system");
json to_json(const LinkSystem& sys);
LinkSystem load_system(const std::filesystem::path& path);

// Graphs: {"n": int, "edges": [[i,j]..]}
Graph graph_from_json(const json& doc, const std::string& where = "graph");
json to_json(const Graph& g);

GeneratorSpec generator_spec_from_json(const std::string& family, const json& params,
                                       std::optional<std::uint64_t> seed);

json to_json(const Triple& t);
json to_json(const MetricityReport& r);
json to_json(const ValidationResult& r);
json to_json(const CapacityResult& r);
/// Per-link in- and out-affectance within the selected set and within X.
json affectance_audit(const LinkSystem& sys, const CapacityResult& r);
json to_json(const Partition& p);
json to_json(const FadingReport& r);
json to_json(const DimensionEstimate& d);
json to_json(const AmicableResult& r);
json to_json(const IndependenceResult& r);

json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const json& doc);
std::string dump(const json& doc);

}  // namespace decaynet::io
