#include "cobound/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "cobound/error.hpp"

namespace cobound {

Json to_json(const RunManifest& m) {
  Json inputs = Json::array();
  for (const auto& [path, hash] : m.inputs) inputs.push_back({{"path", path}, {"fnv1a64", hash}});
  return {{"command", m.command}, {"inputs", inputs},     {"parameters", m.parameters}, {"seed", m.seed},
          {"budget", m.budget},   {"version", m.version}, {"wall_time_s", m.wall_time}};
}

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

Artifact simplex_artifact(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "simplex dimension must be >= 0");
  Artifact a;
  a.family = "simplex";
  a.params = {{"n", n}};
  a.complex = std::make_shared<const PureComplex>(simplex_complex(n));
  a.generators = symmetric_generators(static_cast<std::size_t>(n + 1));
  a.structure = "matroid-span";
  return a;
}

Artifact partition_artifact(int n, int m, std::uint64_t budget) {
  PartitionMatroid X = build_partition_matroid(n, m, budget);
  Artifact a;
  a.family = "partition";
  a.params = {{"n", n}, {"m", m}};
  a.complex = X.complex;
  a.generators = X.automorphisms.generators();
  a.structure = "matroid-span";
  return a;
}

Artifact building_artifact(int n, int q) {
  FlagComplexA D = build_building_A(n, q);
  Artifact a;
  a.family = "building";
  a.params = {{"n", n}, {"q", q}};
  a.complex = D.complex;
  a.generators = D.group.generators();
  a.structure = "apartment-intersection";
  return a;
}

Artifact matroid_artifact(const MatroidSpec& spec, std::uint64_t seed) {
  MatroidComplex M = build_matroid_complex(spec, seed);
  Artifact a;
  a.family = "matroid";
  a.params = {{"ground_set", spec.ground_set.size()}};
  a.complex = M.complex;
  a.generators = M.structure.group.generators();
  a.structure = "matroid-span";
  return a;
}

BuildingLikeStructure artifact_structure(const Artifact& a, std::uint64_t budget) {
  PermGroup G(a.complex->vertex_count(), a.generators);
  if (a.structure == "whole") return whole_complex_structure(a.complex, std::move(G));
  if (a.structure == "matroid-span") return matroid_span_structure(a.complex, std::move(G));
  if (a.structure == "apartment-intersection") {
    const FlagComplexA D = build_building_A(a.params.at("n").get<int>(), a.params.at("q").get<int>());
    if (D.complex->faces(D.complex->dimension()) != a.complex->faces(a.complex->dimension()) ||
        D.complex->labels() != a.complex->labels())
      throw Error(ErrorCode::ParseError, "building artifact does not match its parameters");
    return building_structure(D, budget);
  }
  throw Error(ErrorCode::ParseError, "unknown structure " + a.structure);
}

Json artifact_to_json(const Artifact& a, const RunManifest& manifest) {
  const PureComplex& X = *a.complex;
  Json facets = Json::array();
  for (const auto& f : X.faces(X.dimension())) facets.push_back(f.vertices());
  Json gens = Json::array();
  for (const auto& g : a.generators) gens.push_back(g.images());
  Json counts = Json::array();
  for (std::size_t c : X.f_vector()) counts.push_back(c);
  return {{"manifest", to_json(manifest)},
          {"family", {{"name", a.family}, {"params", a.params}}},
          {"structure", a.structure},
          {"dimension", X.dimension()},
          {"labels", X.labels()},
          {"facets", facets},
          {"generators", gens},
          {"face_counts", counts}};
}

Artifact artifact_from_json(const Json& j) {
  try {
    Artifact a;
    a.family = j.at("family").at("name").get<std::string>();
    a.params = j.at("family").value("params", Json::object());
    a.structure = j.value("structure", std::string("whole"));
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    const auto facets = j.at("facets").get<std::vector<std::vector<VertexId>>>();
    for (const auto& f : facets)
      for (VertexId v : f)
        if (v >= labels.size()) throw Error(ErrorCode::ParseError, "facet vertex id out of range");
    a.complex = std::make_shared<const PureComplex>(PureComplex::from_facets(facets, labels));
    for (const auto& g : j.value("generators", Json::array())) {
      a.generators.emplace_back(g.get<std::vector<VertexId>>());
      if (a.generators.back().size() != a.complex->vertex_count())
        throw Error(ErrorCode::ParseError, "generator length differs from vertex count");
    }
    if (j.contains("face_counts") && j["face_counts"].get<std::vector<std::size_t>>() != a.complex->f_vector())
      throw Error(ErrorCode::ParseError, "face counts do not match the facets");
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Artifact read_artifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  try {
    return artifact_from_json(Json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

Artifact load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return artifact_from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
  }
  std::istringstream facets(text);
  Artifact a;
  a.family = "file";
  a.params = {{"path", path}};
  a.complex = std::make_shared<const PureComplex>(parse_facets(facets));
  return a;
}

MatroidSpec matroid_spec_from_json(const Json& j) {
  try {
    MatroidSpec spec;
    spec.ground_set = j.at("ground_set").get<std::vector<std::string>>();
    if (j.contains("bases")) {
      spec.sets = j["bases"].get<std::vector<std::vector<std::string>>>();
      spec.sets_are_bases = true;
    } else {
      spec.sets = j.at("independent_sets").get<std::vector<std::vector<std::string>>>();
    }
    spec.aut_generators = j.value("automorphisms", std::vector<std::vector<VertexId>>{});
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

BitChain parse_cochain(std::istream& in, const PureComplex& X, int k) {
  if (k < -1 || k > X.dimension()) throw Error(ErrorCode::DimensionMismatch, "cochain dimension out of range");
  std::unordered_map<std::string, VertexId> ids;
  for (VertexId v = 0; v < X.vertex_count(); ++v) ids.emplace(X.label(v), v);
  BitChain phi = BitChain::zero(X, k);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::vector<VertexId> face;
    for (std::string label; tokens >> label;) {
      auto it = ids.find(label);
      if (it == ids.end()) throw Error(ErrorCode::UnknownVertex, "line " + std::to_string(lineno) + ": " + label);
      face.push_back(it->second);
    }
    if (face.empty()) continue;
    if (static_cast<int>(face.size()) != k + 1)
      throw Error(ErrorCode::DimensionMismatch, "line " + std::to_string(lineno) + " is not a k-face");
    phi.bits.flip(X.index_of(Simplex(std::move(face))));
  }
  return phi;
}

BitChain read_cochain(const std::string& path, const PureComplex& X, int k) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  return parse_cochain(in, X, k);
}

std::string face_label(const PureComplex& X, int k, std::size_t i) {
  std::string out;
  for (VertexId v : X.face(k, i)) {
    if (!out.empty()) out += ' ';
    out += X.label(v);
  }
  return out;
}

void write_cochain(std::ostream& out, const PureComplex& X, const BitChain& phi) {
  for (std::size_t i : phi.support()) out << face_label(X, phi.dim, i) << '\n';
}

Json to_json(const ExpansionResult& r, const PureComplex& X) {
  Json witness = Json::array();
  for (std::size_t i : r.witness.support()) witness.push_back(face_label(X, r.k, i));
  return {{"k", r.k},
          {"value", to_fraction_string(r.value)},
          {"exact", r.exact},
          {"cosets", r.search_size},
          {"witness", witness},
          {"coboundary_norm", to_fraction_string(r.coboundary_norm)},
          {"coset_norm", to_fraction_string(r.coset_norm)}};
}

Json to_json(const BoundCertificate& b) {
  Json inputs = Json::object();
  for (const auto& [key, value] : b.inputs) inputs[key] = value;
  return {{"name", b.name}, {"side", to_string(b.side)}, {"value", to_fraction_string(b.value)}, {"inputs", inputs}};
}

Json to_json(const StructureReport& r) {
  return {{"k_max", r.k_max},
          {"passed", r.passed()},
          {"generators_are_automorphisms", r.generators_are_automorphisms},
          {"gset_axioms", r.gset_axioms},
          {"c1_facet_transitive", r.c1_facet_transitive},
          {"c2_equivariance", to_string(r.c2_equivariance)},
          {"c2_checked", r.c2_checked},
          {"c2_total", r.c2_total},
          {"c3_homology_vanishes", r.c3_homology_vanishes},
          {"family_contains_tau", r.family_contains_tau},
          {"family_monotone", r.family_monotone},
          {"subcomplexes_checked", r.subcomplexes_checked},
          {"violations", r.violations}};
}

Json to_json(const ThetaReport& r) {
  return {{"k", r.k},
          {"chains", r.source},
          {"theta", to_fraction_string(r.theta)},
          {"lower_bound", to_fraction_string(r.lower_bound)}};
}

Json to_json(const TesterReport& r) {
  Json j = {{"k", r.k},
            {"trials", r.trials},
            {"rejections", r.rejections},
            {"queries", r.queries},
            {"queries_per_trial", r.k + 2},
            {"rng", r.rng},
            {"seed", r.seed},
            {"empirical_rate", r.empirical_rate},
            {"expected_rate", to_fraction_string(r.expected_rate)},
            {"z_score", r.z_score},
            {"consistent_4sigma", r.consistent}};
  if (r.distance) j["distance"] = to_fraction_string(*r.distance);
  if (r.epsilon) j["epsilon"] = to_json(*r.epsilon);
  if (r.sound) j["sound"] = *r.sound;
  return j;
}

}  // namespace cobound
