#include "coarse/documents.hpp"

#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace coarse {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw InputError("document: " + msg);
}

const Json& field(const Json& j, const char* name, const std::string& doc) {
  auto it = j.find(name);
  if (it == j.end()) fail(doc + " needs field '" + name + "'");
  return *it;
}

// Unknown keys are rejected so a typo in an optional field cannot silently
// change a verdict.
void allow_fields(const Json& j, const std::string& doc,
                  std::initializer_list<const char*> names) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* n : names) {
      if (it.key() == n) {
        known = true;
        break;
      }
    }
    if (!known) fail("unexpected field '" + it.key() + "' in " + doc);
  }
}

long long int_from(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + " must be an integer");
  if (j.is_number_unsigned() &&
      j.get<unsigned long long>() > static_cast<unsigned long long>(
                                        std::numeric_limits<long long>::max()))
    fail(where + " is out of range");
  return j.get<long long>();
}

int small_int_from(const Json& j, const std::string& where) {
  const long long v = int_from(j, where);
  if (v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max())
    fail(where + " is out of range");
  return static_cast<int>(v);
}

std::string string_from(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where + " must be a string");
  return j.get<std::string>();
}

const Json& array_from(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array");
  return j;
}

const Json& object_from(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object");
  return j;
}

Rat rational_from(const Json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(int_from(j, where));
  fail(where + " must be an integer or a rational string like \"3/2\"");
}

std::vector<std::string> strings_from(const Json& j, const std::string& where) {
  std::vector<std::string> out;
  for (const Json& e : array_from(j, where))
    out.push_back(string_from(e, where + " entry"));
  return out;
}

SpacePtr space_from(const Json& j, const std::string& doc) {
  const int n = small_int_from(field(j, "points", doc), doc + " field 'points'");
  if (auto it = j.find("labels"); it != j.end())
    return Space::make(n, strings_from(*it, doc + " field 'labels'"));
  return Space::make(n);
}

PointId point_from(const Json& j, const std::string& where) {
  return small_int_from(j, where);
}

PointSet point_set_from(const SpacePtr& space, const Json& j,
                        const std::string& where) {
  PointSet s(space->size);
  for (const Json& e : array_from(j, where))
    s.insert(point_from(e, where + " entry"));
  return s;
}

Entourage entourage_from(const SpacePtr& space, const Json& j,
                         const std::string& where) {
  std::vector<PointPair> pairs;
  for (const Json& e : array_from(j, where)) {
    const Json& a = array_from(e, where + " entry");
    if (a.size() != 2) fail(where + " entries must be pairs [x,y]");
    pairs.emplace_back(point_from(a[0], where + " pair"),
                       point_from(a[1], where + " pair"));
  }
  return Entourage::from_pairs(space, pairs);
}

std::vector<PointSet> member_list_from(const SpacePtr& space, const Json& j,
                                       const std::string& where) {
  std::vector<PointSet> members;
  for (const Json& e : array_from(j, where))
    members.push_back(point_set_from(space, e, where + " member"));
  return members;
}

SubsetFamily family_from(const SpacePtr& space, const Json& j,
                         const std::string& where) {
  return SubsetFamily::make(space, member_list_from(space, j, where));
}

// Families whose member order other fields index into must already be
// written canonically, or the indexing would silently shift.
SubsetFamily aligned_family_from(const SpacePtr& space, const Json& j,
                                 const std::string& where) {
  auto raw = member_list_from(space, j, where);
  SubsetFamily f = SubsetFamily::make(space, raw);
  if (f.members != raw)
    fail(where +
         " members must be listed in canonical order (sorted by smallest "
         "element)");
  return f;
}

std::vector<Entourage> level_list_from(const SpacePtr& space, const Json& j,
                                       const std::string& where) {
  std::vector<Entourage> levels;
  for (const Json& e : array_from(j, where))
    levels.push_back(entourage_from(space, e, where + " level"));
  return levels;
}

Filtration presentation_from(const Json& j, const std::string& doc) {
  SpacePtr s = space_from(j, doc);
  return Filtration::checked(
      s, level_list_from(s, field(j, "levels", doc), doc + " field 'levels'"));
}

Decomposition dec_from(const SpacePtr& space, const Json& j,
                       const std::string& where) {
  object_from(j, where);
  allow_fields(j, where, {"target", "parts"});
  Decomposition d{space,
                  point_set_from(space, field(j, "target", where),
                                 where + " field 'target'"),
                  {}};
  for (const Json& pj :
       array_from(field(j, "parts", where), where + " field 'parts'")) {
    object_from(pj, where + " part");
    allow_fields(pj, where + " part", {"part", "blocks"});
    DecompositionPart part{point_set_from(space, field(pj, "part", where),
                                          where + " field 'part'"),
                           {}};
    for (const Json& bj : array_from(field(pj, "blocks", where),
                                     where + " field 'blocks'"))
      part.blocks.push_back(point_set_from(space, bj, where + " block"));
    d.parts.push_back(std::move(part));
  }
  return d;
}

FamilyDecomposition fd_from(const SpacePtr& space, const Json& j,
                            const std::string& where, bool embedded) {
  object_from(j, where);
  if (embedded)
    allow_fields(j, where, {"source", "target", "entourage", "arity",
                            "members"});
  else
    allow_fields(j, where, {"kind", "type", "points", "labels", "source",
                            "target", "entourage", "arity", "members"});
  FamilyDecomposition fd{
      aligned_family_from(space, field(j, "source", where),
                          where + " field 'source'"),
      family_from(space, field(j, "target", where), where + " field 'target'"),
      entourage_from(space, field(j, "entourage", where),
                     where + " field 'entourage'"),
      small_int_from(field(j, "arity", where), where + " field 'arity'"),
      {}};
  for (const Json& mj :
       array_from(field(j, "members", where), where + " field 'members'"))
    fd.members.push_back(dec_from(space, mj, where + " member"));
  return fd;
}

void write_space_fields(Json& out, const SpacePtr& s) {
  out["points"] = s->size;
  if (!s->labels.empty()) out["labels"] = s->labels;
}

Json members_json(const std::vector<PointSet>& members) {
  Json a = Json::array();
  for (const auto& m : members) a.push_back(json_of_point_set(m));
  return a;
}

Json levels_json(const std::vector<Entourage>& levels) {
  Json a = Json::array();
  for (const auto& e : levels) a.push_back(json_of_entourage(e));
  return a;
}

Json dec_json(const Decomposition& d) {
  Json j = Json::object();
  j["target"] = json_of_point_set(d.target);
  Json parts = Json::array();
  for (const auto& p : d.parts) {
    Json pj = Json::object();
    pj["part"] = json_of_point_set(p.part);
    pj["blocks"] = members_json(p.blocks);
    parts.push_back(std::move(pj));
  }
  j["parts"] = std::move(parts);
  return j;
}

Json fd_json(const FamilyDecomposition& fd) {
  Json j = Json::object();
  j["source"] = json_of_family(fd.source);
  j["target"] = json_of_family(fd.target);
  j["entourage"] = json_of_entourage(fd.entourage);
  j["arity"] = fd.arity;
  Json ms = Json::array();
  for (const auto& m : fd.members) ms.push_back(dec_json(m));
  j["members"] = std::move(ms);
  return j;
}

std::string outcome_to_string(GameOutcome o) {
  switch (o) {
    case GameOutcome::won:
      return "won";
    case GameOutcome::lost:
      return "lost";
    case GameOutcome::invalid:
      return "invalid";
  }
  return "invalid";
}

GameOutcome outcome_from(const Json& j, const std::string& where) {
  const std::string s = string_from(j, where);
  if (s == "won") return GameOutcome::won;
  if (s == "lost") return GameOutcome::lost;
  if (s == "invalid") return GameOutcome::invalid;
  fail(where + " must be one of won, lost, invalid");
}

Document parse_space(const Json& j) {
  allow_fields(j, "space document",
               {"kind", "points", "labels", "metric", "scales"});
  SpacePtr s = space_from(j, "space document");
  const Json& rows = array_from(field(j, "metric", "space document"),
                                "space field 'metric'");
  if (static_cast<int>(rows.size()) != s->size)
    fail("metric needs one row per point");
  std::vector<Rat> dist;
  dist.reserve(static_cast<std::size_t>(s->size) * s->size);
  for (const Json& row : rows) {
    const Json& r = array_from(row, "metric row");
    if (static_cast<int>(r.size()) != s->size)
      fail("metric rows need one entry per point");
    for (const Json& e : r) dist.push_back(rational_from(e, "metric entry"));
  }
  Document d;
  d.kind = "space";
  d.metric = FiniteMetric::checked(s, std::move(dist));
  if (auto it = j.find("scales"); it != j.end()) {
    for (const Json& e : array_from(*it, "space field 'scales'"))
      d.scales.push_back(rational_from(e, "scales entry"));
    if (!d.scales.empty())
      d.filtration = filtration_at_scales(*d.metric, d.scales);
  }
  return d;
}

Document parse_filtration(const Json& j) {
  allow_fields(j, "filtration document", {"kind", "points", "labels",
                                          "levels"});
  Document d;
  d.kind = "filtration";
  d.filtration = presentation_from(j, "filtration document");
  return d;
}

Document parse_family(const Json& j) {
  allow_fields(j, "family document", {"kind", "points", "labels", "members"});
  SpacePtr s = space_from(j, "family document");
  Document d;
  d.kind = "family";
  d.family = family_from(s, field(j, "members", "family document"),
                         "family field 'members'");
  return d;
}

Document parse_certificate(const Json& j) {
  const std::string type = string_from(
      field(j, "type", "certificate document"), "certificate field 'type'");
  Document d;
  d.kind = "certificate";
  d.certificate_type = type;

  if (type == "property_c") {
    allow_fields(j, "property_c certificate",
                 {"kind", "type", "points", "labels", "challenge", "families",
                  "bound", "carrier"});
    SpacePtr s = space_from(j, "property_c certificate");
    Filtration challenge = Filtration::checked(
        s, level_list_from(s, field(j, "challenge", "property_c certificate"),
                           "field 'challenge'"));
    std::vector<SubsetFamily> families;
    for (const Json& fj :
         array_from(field(j, "families", "property_c certificate"),
                    "field 'families'"))
      families.push_back(family_from(s, fj, "families entry"));
    d.property_c = PropertyCCertificate{
        std::move(challenge), std::move(families),
        entourage_from(s, field(j, "bound", "property_c certificate"),
                       "field 'bound'"),
        point_set_from(s, field(j, "carrier", "property_c certificate"),
                       "field 'carrier'")};
    return d;
  }

  if (type == "dimension") {
    allow_fields(j, "dimension certificate",
                 {"kind", "type", "points", "labels", "scale", "families",
                  "bound", "carrier"});
    SpacePtr s = space_from(j, "dimension certificate");
    std::vector<SubsetFamily> families;
    for (const Json& fj :
         array_from(field(j, "families", "dimension certificate"),
                    "field 'families'"))
      families.push_back(family_from(s, fj, "families entry"));
    d.dimension = DimensionCertificate{
        entourage_from(s, field(j, "scale", "dimension certificate"),
                       "field 'scale'"),
        std::move(families),
        entourage_from(s, field(j, "bound", "dimension certificate"),
                       "field 'bound'"),
        point_set_from(s, field(j, "carrier", "dimension certificate"),
                       "field 'carrier'")};
    return d;
  }

  if (type == "sfdc") {
    allow_fields(j, "sfdc certificate",
                 {"kind", "type", "points", "labels", "challenge", "steps"});
    SpacePtr s = space_from(j, "sfdc certificate");
    const Json& cj = object_from(field(j, "challenge", "sfdc certificate"),
                                 "field 'challenge'");
    allow_fields(cj, "sfdc challenge", {"levels", "win_bound"});
    Challenge ch = Challenge::checked(
        Filtration::checked(
            s, level_list_from(s, field(cj, "levels", "sfdc challenge"),
                               "challenge field 'levels'")),
        entourage_from(s, field(cj, "win_bound", "sfdc challenge"),
                       "challenge field 'win_bound'"));
    std::vector<FamilyDecomposition> steps;
    for (const Json& sj : array_from(field(j, "steps", "sfdc certificate"),
                                     "field 'steps'"))
      steps.push_back(fd_from(s, sj, "steps entry", true));
    d.sfdc = SfdcCertificate{std::move(ch), std::move(steps)};
    return d;
  }

  if (type == "family_decomposition") {
    SpacePtr s = space_from(j, "family_decomposition certificate");
    d.family_decomposition =
        fd_from(s, j, "family_decomposition certificate", false);
    return d;
  }

  if (type == "property_a_config") {
    allow_fields(j, "property_a_config certificate",
                 {"kind", "type", "points", "labels", "base", "n", "levels"});
    SpacePtr s = space_from(j, "property_a_config certificate");
    PropertyAConfig cfg{
        entourage_from(s, field(j, "base", "property_a_config certificate"),
                       "field 'base'"),
        small_int_from(field(j, "n", "property_a_config certificate"),
                       "field 'n'"),
        {}};
    for (const Json& lj :
         array_from(field(j, "levels", "property_a_config certificate"),
                    "field 'levels'")) {
      object_from(lj, "config level");
      allow_fields(lj, "config level",
                   {"family", "representatives", "level_bound"});
      PropertyALevel lv{aligned_family_from(s, field(lj, "family",
                                                     "config level"),
                                            "level field 'family'"),
                        {},
                        entourage_from(s, field(lj, "level_bound",
                                                "config level"),
                                       "level field 'level_bound'")};
      for (const Json& rj :
           array_from(field(lj, "representatives", "config level"),
                      "level field 'representatives'")) {
        const PointId p = point_from(rj, "representative");
        if (p < 0 || p >= s->size)
          fail("representative " + std::to_string(p) +
               " outside space of " + std::to_string(s->size) + " points");
        lv.representatives.push_back(p);
      }
      if (lv.representatives.size() != lv.family.members.size())
        fail("config level needs one representative per family member");
      cfg.levels.push_back(std::move(lv));
    }
    d.propa_config = std::move(cfg);
    return d;
  }

  if (type == "property_a_witness") {
    allow_fields(j, "property_a_witness certificate",
                 {"kind", "type", "points", "labels", "vectors",
                  "support_bound", "epsilon_bound"});
    SpacePtr s = space_from(j, "property_a_witness certificate");
    const Json& vj =
        array_from(field(j, "vectors", "property_a_witness certificate"),
                   "field 'vectors'");
    if (static_cast<int>(vj.size()) != s->size)
      fail("witness needs one vector per point");
    std::vector<SparseVec> vectors;
    for (const Json& entries : vj) {
      SparseVec v;
      for (const Json& ej : array_from(entries, "witness vector")) {
        const Json& a = array_from(ej, "vector entry");
        if (a.size() != 2) fail("vector entries must be pairs [point, value]");
        const PointId p = point_from(a[0], "vector entry point");
        if (p < 0 || p >= s->size)
          fail("vector entry point " + std::to_string(p) +
               " outside space of " + std::to_string(s->size) + " points");
        const Rat value = rational_from(a[1], "vector entry value");
        if (value < 0) fail("vector entry values must be nonnegative");
        v.set(p, value);
      }
      vectors.push_back(std::move(v));
    }
    d.propa_witness = PropertyAWitness{
        s, std::move(vectors),
        entourage_from(s,
                       field(j, "support_bound",
                             "property_a_witness certificate"),
                       "field 'support_bound'"),
        rational_from(field(j, "epsilon_bound",
                            "property_a_witness certificate"),
                      "field 'epsilon_bound'")};
    return d;
  }

  if (type == "coarse_map") {
    allow_fields(j, "coarse_map certificate",
                 {"kind", "type", "source", "target", "graph",
                  "preimage_bounds"});
    Filtration src = presentation_from(
        object_from(field(j, "source", "coarse_map certificate"),
                    "field 'source'"),
        "coarse_map source");
    Filtration tgt = presentation_from(
        object_from(field(j, "target", "coarse_map certificate"),
                    "field 'target'"),
        "coarse_map target");
    std::vector<PointId> graph;
    for (const Json& gj : array_from(field(j, "graph", "coarse_map certificate"),
                                     "field 'graph'"))
      graph.push_back(point_from(gj, "graph entry"));
    std::vector<Entourage> bounds;
    if (auto it = j.find("preimage_bounds"); it != j.end())
      bounds = level_list_from(src.space, *it, "field 'preimage_bounds'");
    d.coarse_map = CoarseMap::checked(std::move(src), std::move(tgt),
                                      std::move(graph), std::move(bounds));
    return d;
  }

  fail("unknown certificate type '" + type + "'");
}

Document parse_transcript(const Json& j) {
  allow_fields(j, "transcript document",
               {"kind", "points", "labels", "win_bound", "moves", "outcome",
                "final_family", "failure"});
  SpacePtr s = space_from(j, "transcript document");
  Entourage win = entourage_from(s, field(j, "win_bound", "transcript"),
                                 "field 'win_bound'");
  std::vector<GameMove> moves;
  for (const Json& mj :
       array_from(field(j, "moves", "transcript"), "field 'moves'")) {
    object_from(mj, "transcript move");
    allow_fields(mj, "transcript move", {"assertion", "response",
                                         "certificate"});
    GameMove mv{entourage_from(s, field(mj, "assertion", "transcript move"),
                               "move field 'assertion'"),
                family_from(s, field(mj, "response", "transcript move"),
                            "move field 'response'"),
                std::nullopt};
    if (auto it = mj.find("certificate"); it != mj.end())
      mv.certificate = fd_from(s, *it, "move certificate", true);
    moves.push_back(std::move(mv));
  }
  Verdict failure;
  if (auto it = j.find("failure"); it != j.end()) {
    for (const Json& fj : array_from(*it, "field 'failure'")) {
      object_from(fj, "failure entry");
      allow_fields(fj, "failure entry", {"rule", "detail"});
      failure.add(string_from(field(fj, "rule", "failure entry"),
                              "failure field 'rule'"),
                  string_from(field(fj, "detail", "failure entry"),
                              "failure field 'detail'"));
    }
  }
  Document d;
  d.kind = "transcript";
  d.transcript = GameTranscript{
      s,
      std::move(win),
      std::move(moves),
      outcome_from(field(j, "outcome", "transcript"), "field 'outcome'"),
      family_from(s, field(j, "final_family", "transcript"),
                  "field 'final_family'"),
      std::move(failure)};
  return d;
}

Document parse_report(const Json& j) {
  string_from(field(j, "command", "report document"),
              "report field 'command'");
  Document d;
  d.kind = "report";
  d.report = j;
  return d;
}

}  // namespace

Document parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("top level must be an object");
  const std::string kind =
      string_from(field(j, "kind", "document"), "field 'kind'");
  if (kind == "space") return parse_space(j);
  if (kind == "filtration") return parse_filtration(j);
  if (kind == "family") return parse_family(j);
  if (kind == "certificate") return parse_certificate(j);
  if (kind == "transcript") return parse_transcript(j);
  if (kind == "report") return parse_report(j);
  fail("unknown kind '" + kind + "'");
}

Json document_to_json(const Document& d) {
  Json j = Json::object();
  if (d.kind == "space") {
    const FiniteMetric& m = *d.metric;
    j["kind"] = "space";
    write_space_fields(j, m.space);
    Json rows = Json::array();
    for (PointId x = 0; x < m.space->size; ++x) {
      Json row = Json::array();
      for (PointId y = 0; y < m.space->size; ++y)
        row.push_back(json_of_rational(m.at(x, y)));
      rows.push_back(std::move(row));
    }
    j["metric"] = std::move(rows);
    if (!d.scales.empty()) {
      Json ss = Json::array();
      for (const Rat& r : d.scales) ss.push_back(json_of_rational(r));
      j["scales"] = std::move(ss);
    }
    return j;
  }

  if (d.kind == "filtration") {
    j["kind"] = "filtration";
    write_space_fields(j, d.filtration->space);
    j["levels"] = levels_json(d.filtration->levels);
    return j;
  }

  if (d.kind == "family") {
    j["kind"] = "family";
    write_space_fields(j, d.family->space);
    j["members"] = json_of_family(*d.family);
    return j;
  }

  if (d.kind == "certificate") {
    j["kind"] = "certificate";
    j["type"] = d.certificate_type;

    if (d.certificate_type == "property_c") {
      const PropertyCCertificate& c = *d.property_c;
      write_space_fields(j, c.challenge.space);
      j["challenge"] = levels_json(c.challenge.levels);
      Json fams = Json::array();
      for (const auto& f : c.families) fams.push_back(json_of_family(f));
      j["families"] = std::move(fams);
      j["bound"] = json_of_entourage(c.bound);
      j["carrier"] = json_of_point_set(c.carrier);
      return j;
    }
    if (d.certificate_type == "dimension") {
      const DimensionCertificate& c = *d.dimension;
      write_space_fields(j, c.scale.space());
      j["scale"] = json_of_entourage(c.scale);
      Json fams = Json::array();
      for (const auto& f : c.families) fams.push_back(json_of_family(f));
      j["families"] = std::move(fams);
      j["bound"] = json_of_entourage(c.bound);
      j["carrier"] = json_of_point_set(c.carrier);
      return j;
    }
    if (d.certificate_type == "sfdc") {
      const SfdcCertificate& c = *d.sfdc;
      write_space_fields(j, c.challenge.levels.space);
      Json ch = Json::object();
      ch["levels"] = levels_json(c.challenge.levels.levels);
      ch["win_bound"] = json_of_entourage(c.challenge.win_bound);
      j["challenge"] = std::move(ch);
      Json steps = Json::array();
      for (const auto& s : c.steps) steps.push_back(fd_json(s));
      j["steps"] = std::move(steps);
      return j;
    }
    if (d.certificate_type == "family_decomposition") {
      const FamilyDecomposition& fd = *d.family_decomposition;
      write_space_fields(j, fd.source.space);
      Json body = fd_json(fd);
      for (auto& [k, v] : body.items()) j[k] = std::move(v);
      return j;
    }
    if (d.certificate_type == "property_a_config") {
      const PropertyAConfig& cfg = *d.propa_config;
      write_space_fields(j, cfg.base.space());
      j["base"] = json_of_entourage(cfg.base);
      j["n"] = cfg.n;
      Json levels = Json::array();
      for (const auto& lv : cfg.levels) {
        Json lj = Json::object();
        lj["family"] = json_of_family(lv.family);
        Json reps = Json::array();
        for (PointId r : lv.representatives) reps.push_back(r);
        lj["representatives"] = std::move(reps);
        lj["level_bound"] = json_of_entourage(lv.level_bound);
        levels.push_back(std::move(lj));
      }
      j["levels"] = std::move(levels);
      return j;
    }
    if (d.certificate_type == "property_a_witness") {
      const PropertyAWitness& w = *d.propa_witness;
      write_space_fields(j, w.space);
      Json vectors = Json::array();
      for (const auto& v : w.vectors) {
        Json entries = Json::array();
        for (const auto& [p, value] : v.entries()) {
          Json e = Json::array();
          e.push_back(p);
          e.push_back(json_of_rational(value));
          entries.push_back(std::move(e));
        }
        vectors.push_back(std::move(entries));
      }
      j["vectors"] = std::move(vectors);
      j["support_bound"] = json_of_entourage(w.support_bound);
      j["epsilon_bound"] = json_of_rational(w.epsilon_bound);
      return j;
    }
    if (d.certificate_type == "coarse_map") {
      const CoarseMap& f = *d.coarse_map;
      Json src = Json::object();
      write_space_fields(src, f.source.space);
      src["levels"] = levels_json(f.source.levels);
      j["source"] = std::move(src);
      Json tgt = Json::object();
      write_space_fields(tgt, f.target.space);
      tgt["levels"] = levels_json(f.target.levels);
      j["target"] = std::move(tgt);
      Json graph = Json::array();
      for (PointId p : f.graph) graph.push_back(p);
      j["graph"] = std::move(graph);
      if (!f.preimage_bounds.empty())
        j["preimage_bounds"] = levels_json(f.preimage_bounds);
      return j;
    }
    throw InputError("document: cannot serialize certificate type '" +
                     d.certificate_type + "'");
  }

  if (d.kind == "transcript") {
    const GameTranscript& t = *d.transcript;
    j["kind"] = "transcript";
    write_space_fields(j, t.space);
    j["win_bound"] = json_of_entourage(t.win_bound);
    Json moves = Json::array();
    for (const auto& m : t.moves) {
      Json mj = Json::object();
      mj["assertion"] = json_of_entourage(m.assertion);
      mj["response"] = json_of_family(m.response);
      if (m.certificate) mj["certificate"] = fd_json(*m.certificate);
      moves.push_back(std::move(mj));
    }
    j["moves"] = std::move(moves);
    j["outcome"] = outcome_to_string(t.outcome);
    j["final_family"] = json_of_family(t.final_family);
    if (!t.failure.ok()) j["failure"] = json_of_verdict(t.failure);
    return j;
  }

  if (d.kind == "report") return d.report;

  throw InputError("document: cannot serialize kind '" + d.kind + "'");
}

std::string serialize_document(const Document& d) {
  return document_to_json(d).dump(2) + "\n";
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_document(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void save_document(const Document& d, const std::string& path) {
  const std::string text = serialize_document(d);
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("cannot write '" + path + "'");
}

Document document_from_space(FiniteMetric m, std::vector<Rat> scales) {
  Document d;
  d.kind = "space";
  if (!scales.empty()) d.filtration = filtration_at_scales(m, scales);
  d.metric = std::move(m);
  d.scales = std::move(scales);
  return d;
}

Document document_from_filtration(Filtration f) {
  Document d;
  d.kind = "filtration";
  d.filtration = std::move(f);
  return d;
}

Document document_from_family(SubsetFamily u) {
  Document d;
  d.kind = "family";
  d.family = std::move(u);
  return d;
}

Document document_from_property_c(PropertyCCertificate c) {
  Document d;
  d.kind = "certificate";
  d.certificate_type = "property_c";
  d.property_c = std::move(c);
  return d;
}

Document document_from_dimension(DimensionCertificate c) {
  Document d;
  d.kind = "certificate";
  d.certificate_type = "dimension";
  d.dimension = std::move(c);
  return d;
}

Document document_from_sfdc(SfdcCertificate c) {
  Document d;
  d.kind = "certificate";
  d.certificate_type = "sfdc";
  d.sfdc = std::move(c);
  return d;
}

Document document_from_family_decomposition(FamilyDecomposition fd) {
  Document d;
  d.kind = "certificate";
  d.certificate_type = "family_decomposition";
  d.family_decomposition = std::move(fd);
  return d;
}

Document document_from_propa_config(PropertyAConfig cfg) {
  Document d;
  d.kind = "certificate";
  d.certificate_type = "property_a_config";
  d.propa_config = std::move(cfg);
  return d;
}

Document document_from_propa_witness(PropertyAWitness w) {
  Document d;
  d.kind = "certificate";
  d.certificate_type = "property_a_witness";
  d.propa_witness = std::move(w);
  return d;
}

Document document_from_map(CoarseMap f) {
  Document d;
  d.kind = "certificate";
  d.certificate_type = "coarse_map";
  d.coarse_map = std::move(f);
  return d;
}

Document document_from_transcript(GameTranscript t) {
  Document d;
  d.kind = "transcript";
  d.transcript = std::move(t);
  return d;
}

Document document_from_report(Json report) {
  if (!report.is_object() || !report.contains("command"))
    throw InputError("document: a report needs a 'command' field");
  Document d;
  d.kind = "report";
  d.report = std::move(report);
  return d;
}

Json json_of_rational(const Rat& r) { return Json(format_rational(r)); }

Json json_of_point_set(const PointSet& s) {
  Json a = Json::array();
  s.for_each([&](PointId p) { a.push_back(p); });
  return a;
}

Json json_of_entourage(const Entourage& e) {
  Json a = Json::array();
  for (const auto& [x, y] : e.pairs()) {
    Json pair = Json::array();
    pair.push_back(x);
    pair.push_back(y);
    a.push_back(std::move(pair));
  }
  return a;
}

Json json_of_family(const SubsetFamily& u) { return members_json(u.members); }

Json json_of_verdict(const Verdict& v) {
  Json a = Json::array();
  for (const auto& violation : v.violations) {
    Json e = Json::object();
    e["rule"] = violation.rule;
    e["detail"] = violation.detail;
    a.push_back(std::move(e));
  }
  return a;
}

SubsetFamily family_from_json(const SpacePtr& space, const Json& j) {
  return family_from(space, j, "family literal");
}

FamilyDecomposition family_decomposition_from_json(const SpacePtr& space,
                                                   const Json& j) {
  return fd_from(space, j, "decomposition literal", true);
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string dot_of_entourage(const SpacePtr& space, const Entourage& e) {
  std::ostringstream os;
  os << "graph entourage {\n";
  for (PointId x = 0; x < space->size; ++x)
    os << "  " << x << " [label=\"" << dot_escape(space->label_of(x))
       << "\"];\n";
  for (PointId x = 0; x < space->size; ++x) {
    for (PointId y = x + 1; y < space->size; ++y) {
      const bool fwd = e.contains(x, y);
      const bool back = e.contains(y, x);
      if (!fwd && !back) continue;
      os << "  " << x << " -- " << y;
      if (fwd && !back) os << " [dir=forward]";
      if (back && !fwd) os << " [dir=back]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace coarse
