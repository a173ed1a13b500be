#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coarse/games.hpp"
#include "coarse/maps.hpp"
#include "coarse/metric.hpp"
#include "coarse/property_a.hpp"

namespace coarse {

using Json = nlohmann::ordered_json;

// One parsed document. `kind` decides which payload fields are set:
//   space        metric, scales (maybe empty); filtration when scales given
//   filtration   filtration
//   family       family
//   certificate  certificate_type plus the matching optional below
//   transcript   transcript
//   report       report, kept verbatim
// Everything a library constructor can validate is validated at parse time;
// semantic checks (verify_*, check_config) stay with their commands.
struct Document {
  std::string kind;
  std::string certificate_type;

  std::optional<FiniteMetric> metric;
  std::vector<Rat> scales;
  std::optional<Filtration> filtration;
  std::optional<SubsetFamily> family;

  std::optional<PropertyCCertificate> property_c;
  std::optional<DimensionCertificate> dimension;
  std::optional<SfdcCertificate> sfdc;
  std::optional<FamilyDecomposition> family_decomposition;
  std::optional<PropertyAConfig> propa_config;
  std::optional<PropertyAWitness> propa_witness;
  std::optional<CoarseMap> coarse_map;

  std::optional<GameTranscript> transcript;
  Json report;
};

// Throws InputError naming the offending field on malformed input.
Document parse_document(const std::string& text);
Json document_to_json(const Document& d);
std::string serialize_document(const Document& d);

Document load_document(const std::string& path);
void save_document(const Document& d, const std::string& path);

// Builders fixing the canonical field order of each kind.
Document document_from_space(FiniteMetric m, std::vector<Rat> scales = {});
Document document_from_filtration(Filtration f);
Document document_from_family(SubsetFamily u);
Document document_from_property_c(PropertyCCertificate c);
Document document_from_dimension(DimensionCertificate c);
Document document_from_sfdc(SfdcCertificate c);
Document document_from_family_decomposition(FamilyDecomposition fd);
Document document_from_propa_config(PropertyAConfig cfg);
Document document_from_propa_witness(PropertyAWitness w);
Document document_from_map(CoarseMap f);
Document document_from_transcript(GameTranscript t);
Document document_from_report(Json report);

// Fragment encoders, shared with report payloads.
Json json_of_rational(const Rat& r);
Json json_of_point_set(const PointSet& s);
Json json_of_entourage(const Entourage& e);
Json json_of_family(const SubsetFamily& u);
Json json_of_verdict(const Verdict& v);

// Fragment decoders used by the interactive game loop.
SubsetFamily family_from_json(const SpacePtr& space, const Json& j);
FamilyDecomposition family_decomposition_from_json(const SpacePtr& space,
                                                   const Json& j);

// Undirected DOT rendering of a relation. Diagonal pairs are dropped,
// mutual pairs become plain edges, one-sided pairs carry a dir attribute.
std::string dot_of_entourage(const SpacePtr& space, const Entourage& e);

}  // namespace coarse
