#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cobound/building_like.hpp"
#include "cobound/complex.hpp"
#include "cobound/expansion.hpp"
#include "cobound/f2.hpp"
#include "cobound/group.hpp"
#include "cobound/matroids.hpp"
#include "cobound/spherical_building.hpp"
#include "cobound/tester.hpp"

namespace cobound {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

struct RunManifest {
  std::string command;
  /// (path, FNV-1a hash) of every input file.
  std::vector<std::pair<std::string, std::string>> inputs;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::string version = kVersion;
  double wall_time = 0;
};

Json to_json(const RunManifest& m);

/// 64-bit FNV-1a of the file contents as 16 hex digits. Throws ParseError
/// when the file cannot be read.
std::string file_hash(const std::string& path);

/// A built complex with the data needed to rebuild its structure.
struct Artifact {
  std::string family;
  Json params = Json::object();
  std::shared_ptr<const PureComplex> complex;
  std::vector<Permutation> generators;
  /// "whole", "matroid-span" or "apartment-intersection".
  std::string structure = "whole";
};

Artifact simplex_artifact(int n);
Artifact partition_artifact(int n, int m, std::uint64_t budget = kDefaultBudget);
Artifact building_artifact(int n, int q);
Artifact matroid_artifact(const MatroidSpec& spec, std::uint64_t seed = 1);

/// The building-like structure named by the artifact. Buildings are rebuilt
/// from their parameters; throws ParseError when the rebuilt complex differs.
BuildingLikeStructure artifact_structure(const Artifact& a, std::uint64_t budget = kDefaultBudget);

Json artifact_to_json(const Artifact& a, const RunManifest& manifest);
/// Rebuilds the complex from labels and facets; the face indexing is a
/// function of the facet list only. Throws ParseError.
Artifact artifact_from_json(const Json& j);
Artifact read_artifact(const std::string& path);

/// Artifact JSON when the file parses as JSON, a plain facet file otherwise.
Artifact load_complex(const std::string& path);

/// Matroid JSON: {"ground_set": [...], "bases" | "independent_sets": [[...]],
/// "automorphisms": [[positions...]]}.
MatroidSpec matroid_spec_from_json(const Json& j);

/// One supported k-face per line as whitespace-separated labels.
BitChain parse_cochain(std::istream& in, const PureComplex& X, int k);
BitChain read_cochain(const std::string& path, const PureComplex& X, int k);
void write_cochain(std::ostream& out, const PureComplex& X, const BitChain& phi);

std::string face_label(const PureComplex& X, int k, std::size_t i);

Json to_json(const ExpansionResult& r, const PureComplex& X);
Json to_json(const BoundCertificate& b);
Json to_json(const StructureReport& r);
Json to_json(const ThetaReport& r);
Json to_json(const TesterReport& r);

}  // namespace cobound
