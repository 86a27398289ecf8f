#pragma once

#include "tropos/alexander.hpp"
#include "tropos/catalog.hpp"

#include <json.hpp>

#include <string>

namespace tropos {

using Json = nlohmann::json;

/// Version tag carried by every document.
inline constexpr const char *kSchemaVersion = "tropos/1";

Json to_json(const Rational &q);
Rational rational_from_json(const Json &j);
Json to_json(const Vec &v);
Vec vec_from_json(const Json &j);
Json to_json(const GroupElement &e);
Json to_json(const LaurentPoly &f);
Json to_json(const Polyhedron &p, const std::vector<std::string> &labels = {});
Polyhedron polyhedron_from_json(const Json &j);
Json to_json(const TropicalRegion &r);
/// Cells and provenance only; no membership oracle.
TropicalRegion region_from_json(const Json &j);
Json to_json(const SphericalSet &s, Provenance p = Provenance::Exact);
SphericalSet sphere_from_json(const Json &j);
Json to_json(const JumpIdeal &j);
Json to_json(const BnsrBound &b);
Json to_json(const InclusionReport &r);
Json to_json(const BnsFixture &f);
BnsFixture fixture_from_json(const Json &j);
BnsFixture load_fixture(const std::string &path);
Json to_json(const WraagJumpLoci &l, const WeightedGraph &g);
Json to_json(const OrbifoldReport &r);

/// {"schema": ..., "command": ..., "provenance": ...} merged with body.
Json document(const std::string &command, Provenance p, Json body);

/// Pretty-printed with sorted keys and a trailing newline.
std::string dump(const Json &j);

} // namespace tropos
