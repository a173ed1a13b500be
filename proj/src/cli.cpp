#include "coarse/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "coarse/documents.hpp"

namespace coarse {

namespace {

void print_report(std::ostream& out, const Json& r) {
  out << r.dump(2) << "\n";
}

Json new_report(const std::string& command,
                const std::vector<std::string>& args) {
  Json r = Json::object();
  r["kind"] = "report";
  r["command"] = command;
  Json a = Json::array();
  for (const auto& s : args) a.push_back(s);
  r["arguments"] = std::move(a);
  return r;
}

void put_verdict(Json& r, const Verdict& v) {
  r["holds"] = v.ok();
  r["violations"] = json_of_verdict(v);
}

std::string outcome_text(GameOutcome o) {
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

int outcome_code(GameOutcome o) {
  switch (o) {
    case GameOutcome::won:
      return 0;
    case GameOutcome::lost:
      return 1;
    case GameOutcome::invalid:
      return 2;
  }
  return 2;
}

void put_transcript(Json& r, const GameTranscript& t) {
  r["outcome"] = outcome_text(t.outcome);
  r["rounds"] = static_cast<int>(t.moves.size());
  r["transcript"] = document_to_json(document_from_transcript(t));
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
  if (!f) throw InputError("cannot write '" + path + "'");
}

int exact_limit_from_env() {
  const char* v = std::getenv("COARSE_EXACT_LIMIT");
  if (!v || !*v) return 16;
  const std::string text(v);
  try {
    std::size_t pos = 0;
    const int n = std::stoi(text, &pos);
    if (pos != text.size() || n < 1) throw std::invalid_argument(text);
    return n;
  } catch (const std::exception&) {
    throw InputError("COARSE_EXACT_LIMIT must be a positive integer, not '" +
                     text + "'");
  }
}

Document load_kind(const std::string& path, const std::string& kind,
                   const char* what) {
  Document d = load_document(path);
  if (d.kind != kind)
    throw InputError(std::string(what) + ": expected a " + kind +
                     " document, found kind '" + d.kind + "'");
  return d;
}

Document load_certificate(const std::string& path,
                          std::initializer_list<const char*> types,
                          const char* what) {
  Document d = load_kind(path, "certificate", what);
  for (const char* t : types)
    if (d.certificate_type == t) return d;
  std::string wanted;
  for (const char* t : types) {
    if (!wanted.empty()) wanted += ", ";
    wanted += t;
  }
  throw InputError(std::string(what) + ": certificate type '" +
                   d.certificate_type + "' not usable here (expected " +
                   wanted + ")");
}

// The entourage in play is named against a presentation: --level picks a
// 1-based level, --scale a radius ball (space documents only), the default
// is the top level. A space document without scales still works wherever
// --scale supplies the single level.
struct Selected {
  Filtration filtration;
  std::optional<FiniteMetric> metric;
};

Selected load_presentation(const std::string& path, const std::string& scale,
                           const char* what) {
  Document d = load_document(path);
  if (d.kind == "filtration") return {*d.filtration, std::nullopt};
  if (d.kind == "space") {
    if (d.filtration) return {*d.filtration, std::move(d.metric)};
    if (!scale.empty()) {
      Filtration f = filtration_at_scales(*d.metric, {parse_rational(scale)});
      return {std::move(f), std::move(d.metric)};
    }
    throw InputError(std::string(what) + ": space document '" + path +
                     "' carries no scales; pass --scale or add a scales "
                     "field");
  }
  throw InputError(std::string(what) +
                   ": expected a space or filtration document, found kind '" +
                   d.kind + "'");
}

Entourage level_of(const Filtration& f, int level, const char* what) {
  if (level < 1 || level > f.depth())
    throw InputError(std::string(what) + ": level " + std::to_string(level) +
                     " out of range 1.." + std::to_string(f.depth()));
  return f.level(level - 1);
}

Entourage pick_entourage(const Selected& sel, const std::optional<int>& level,
                         const std::string& scale, const char* what) {
  if (level && !scale.empty())
    throw InputError(std::string(what) +
                     ": pass at most one of --level and --scale");
  if (!scale.empty()) {
    if (!sel.metric)
      throw InputError(std::string(what) +
                       ": --scale needs a metric; this input is a filtration");
    return entourage_at_radius(*sel.metric, parse_rational(scale));
  }
  if (level) return level_of(sel.filtration, *level, what);
  return sel.filtration.top();
}

Entourage pick_bound(const Selected& sel, const std::string& bound,
                     const std::optional<int>& bound_level, const char* what) {
  if (!bound.empty() && bound_level)
    throw InputError(std::string(what) +
                     ": pass exactly one of --bound and --bound-level");
  if (!bound.empty()) {
    if (!sel.metric)
      throw InputError(std::string(what) +
                       ": --bound needs a metric; use --bound-level on a "
                       "filtration");
    return entourage_at_radius(*sel.metric, parse_rational(bound));
  }
  if (bound_level) return level_of(sel.filtration, *bound_level, what);
  throw InputError(std::string(what) + ": pass --bound or --bound-level");
}

PlayerOneStrategy constant_player(Entourage e) {
  return PlayerOneStrategy{
      [e = std::move(e)](const GameTranscript&) { return e; }};
}

PlayerOneStrategy seeded_player(Filtration f, unsigned int seed) {
  auto gen = std::make_shared<std::mt19937>(seed);
  return PlayerOneStrategy{[f = std::move(f), gen](const GameTranscript&) {
    std::uniform_int_distribution<int> pick(0, f.depth() - 1);
    return f.level(pick(*gen));
  }};
}

SpacePtr certificate_space(const Document& d) {
  if (d.certificate_type == "sfdc") return d.sfdc->challenge.levels.space;
  if (d.certificate_type == "dimension") return d.dimension->scale.space();
  if (d.certificate_type == "property_c") return d.property_c->challenge.space;
  throw InputError("no space for certificate type '" + d.certificate_type +
                   "'");
}

PlayerTwoStrategy decomposition_strategy_from(const Document& d,
                                              const char* what) {
  if (d.certificate_type == "sfdc") return strategy_from_sfdc(*d.sfdc);
  if (d.certificate_type == "dimension")
    return strategy_from_dimension(*d.dimension);
  if (d.certificate_type == "property_c")
    return strategy_from_sfdc(sfdc_from_propc(*d.property_c));
  throw InputError(std::string(what) +
                   ": no decomposition strategy from certificate type '" +
                   d.certificate_type + "'");
}

// Round i replays the certificate's family i (the last one once they run
// out), clipped to the not-yet-covered part of the space.
CoverStrategy cover_from_dimension(DimensionCertificate cert) {
  return CoverStrategy{[cert = std::move(cert)](const GameTranscript& t,
                                                const Entourage&) {
    if (cert.families.empty()) return SubsetFamily::make(t.space, {});
    PointSet covered(t.space->size);
    for (const auto& m : t.moves)
      for (const auto& s : m.response.members) covered = covered | s;
    const PointSet uncovered = PointSet::full(t.space->size) - covered;
    const int last = static_cast<int>(cert.families.size()) - 1;
    const int i = std::min(static_cast<int>(t.moves.size()), last);
    return restrict_family(cert.families[i], uncovered);
  }};
}

// Interactive moves are read one JSON line at a time; a line that fails to
// parse is reported and the prompt stays open, so an operator can retry.
// "resign [reason]" concedes.
Json move_prompt(const GameTranscript& t, const Entourage& assertion) {
  Json prompt = Json::object();
  prompt["round"] = static_cast<int>(t.moves.size()) + 1;
  prompt["assertion"] = json_of_entourage(assertion);
  prompt["standing"] = json_of_family(t.final_family);
  return prompt;
}

PlayerTwoStrategy interactive_decomposition(std::istream& in,
                                            std::ostream& out,
                                            SpacePtr space) {
  return PlayerTwoStrategy{[&in, &out, space](const GameTranscript& t,
                                              const Entourage& assertion)
                               -> DecompositionMove {
    out << move_prompt(t, assertion).dump() << "\n";
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line.rfind("resign", 0) == 0) {
        std::string reason = line.size() > 7 ? line.substr(7) : "";
        if (reason.empty()) reason = "resigned";
        return {std::nullopt, reason};
      }
      try {
        return {family_decomposition_from_json(space, Json::parse(line)), ""};
      } catch (const std::exception& e) {
        Json err = Json::object();
        err["error"] = e.what();
        out << err.dump() << "\n";
      }
    }
    return {std::nullopt, "input closed"};
  }};
}

// Cover-game answers are family literals; an empty family (or "resign")
// forfeits the round without ending the game.
CoverStrategy interactive_cover(std::istream& in, std::ostream& out) {
  return CoverStrategy{[&in, &out](const GameTranscript& t,
                                   const Entourage& assertion) {
    out << move_prompt(t, assertion).dump() << "\n";
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line.rfind("resign", 0) == 0)
        return SubsetFamily::make(t.space, {});
      try {
        return family_from_json(t.space, Json::parse(line));
      } catch (const std::exception& e) {
        Json err = Json::object();
        err["error"] = e.what();
        out << err.dump() << "\n";
      }
    }
    return SubsetFamily::make(t.space, {});
  }};
}

// ---------- commands ----------

struct CheckOpts {
  std::string family, instance, scale, dot;
  std::optional<int> level;
};

int run_check(bool disjoint, const CheckOpts& o,
              const std::vector<std::string>& args, std::ostream& out) {
  const char* what = disjoint ? "check-disjoint" : "check-bounded";
  Document fd = load_kind(o.family, "family", what);
  Selected sel = load_presentation(o.instance, o.scale, what);
  require_same_space(fd.family->space, sel.filtration.space, what);
  const Entourage e = pick_entourage(sel, o.level, o.scale, what);
  const Verdict v =
      disjoint ? is_disjoint(*fd.family, e) : is_bounded_by(*fd.family, e);
  if (!o.dot.empty())
    write_text_file(o.dot, dot_of_entourage(sel.filtration.space, e));
  Json r = new_report(what, args);
  r["entourage"] = json_of_entourage(e);
  put_verdict(r, v);
  print_report(out, r);
  return v.ok() ? 0 : 1;
}

struct PathOpts {
  std::string path;
};

int run_verify_propc(const PathOpts& o, const std::vector<std::string>& args,
                     std::ostream& out) {
  Document d = load_certificate(o.path, {"property_c"}, "verify-propc");
  const Verdict v = verify_property_c(*d.property_c);
  Json r = new_report("verify-propc", args);
  put_verdict(r, v);
  print_report(out, r);
  return v.ok() ? 0 : 1;
}

int run_verify_decomp(const PathOpts& o, const std::vector<std::string>& args,
                      std::ostream& out) {
  Document d = load_certificate(
      o.path, {"dimension", "sfdc", "family_decomposition"}, "verify-decomp");
  Verdict v;
  if (d.certificate_type == "dimension")
    v = verify_dimension(*d.dimension);
  else if (d.certificate_type == "sfdc")
    v = verify_sfdc(*d.sfdc);
  else
    v = verify_family_decomposition(*d.family_decomposition);
  Json r = new_report("verify-decomp", args);
  r["type"] = d.certificate_type;
  put_verdict(r, v);
  print_report(out, r);
  return v.ok() ? 0 : 1;
}

struct VerifyPropaOpts {
  std::string witness, instance, scale;
  std::optional<int> level;
};

int run_verify_propa(const VerifyPropaOpts& o,
                     const std::vector<std::string>& args, std::ostream& out) {
  Document wd =
      load_certificate(o.witness, {"property_a_witness"}, "verify-propa");
  Selected sel = load_presentation(o.instance, o.scale, "verify-propa");
  require_same_space(wd.propa_witness->space, sel.filtration.space,
                     "verify-propa");
  const Entourage e = pick_entourage(sel, o.level, o.scale, "verify-propa");
  const Verdict v = verify_witness(*wd.propa_witness, e);
  Json r = new_report("verify-propa", args);
  r["entourage"] = json_of_entourage(e);
  r["epsilon_bound"] = json_of_rational(wd.propa_witness->epsilon_bound);
  put_verdict(r, v);
  print_report(out, r);
  return v.ok() ? 0 : 1;
}

struct SearchOpts {
  std::string instance, scale, bound, mode = "exact", output;
  std::optional<int> level, bound_level;
  int n = 0;
};

int run_search_dim(const SearchOpts& o, const std::vector<std::string>& args,
                   std::ostream& out) {
  Selected sel = load_presentation(o.instance, o.scale, "search-dim");
  const Entourage scale_e = pick_entourage(sel, o.level, o.scale, "search-dim");
  const Entourage bound_e =
      pick_bound(sel, o.bound, o.bound_level, "search-dim");
  const int limit = exact_limit_from_env();
  const SearchMode mode =
      o.mode == "exact" ? SearchMode::exact : SearchMode::greedy;
  const DimensionSearchResult res =
      search_dimension_certificate(scale_e, bound_e, o.n, mode, limit);
  Json r = new_report("search-dim", args);
  r["n"] = o.n;
  r["mode"] = o.mode;
  r["exact_limit"] = limit;
  r["found"] = res.certificate.has_value();
  r["exhausted"] = res.exhausted;
  r["refuted"] = !res.certificate.has_value() && res.exhausted;
  if (res.certificate) {
    const Verdict v = verify_dimension(*res.certificate);
    r["certificate_verified"] = v.ok();
    Document cd = document_from_dimension(*res.certificate);
    r["certificate"] = document_to_json(cd);
    if (!o.output.empty()) save_document(cd, o.output);
    print_report(out, r);
    return v.ok() ? 0 : 1;
  }
  print_report(out, r);
  return 1;
}

struct BuildPropaOpts {
  std::string config, epsilon, output;
  std::optional<int> n;
};

int run_build_propa(const BuildPropaOpts& o,
                    const std::vector<std::string>& args, std::ostream& out) {
  Document cd =
      load_certificate(o.config, {"property_a_config"}, "build-propa");
  PropertyAConfig cfg = *cd.propa_config;
  if (o.n) cfg.n = *o.n;
  const Rat eps = parse_rational(o.epsilon);
  const PropertyAWitness w = build_witness(cfg, eps);
  const Verdict v = verify_witness(w, cfg.base);
  Json r = new_report("build-propa", args);
  r["n"] = cfg.n;
  r["epsilon"] = json_of_rational(eps);
  r["epsilon_bound"] = json_of_rational(w.epsilon_bound);
  Document wd = document_from_propa_witness(w);
  r["witness"] = document_to_json(wd);
  put_verdict(r, v);
  if (!o.output.empty()) save_document(wd, o.output);
  print_report(out, r);
  return v.ok() ? 0 : 1;
}

struct PlayFdcOpts {
  std::string instance, strategy, scale, bound, output;
  std::optional<int> level, bound_level;
  std::optional<unsigned int> seed;
  int max_rounds = 8;
  bool weak = false, interactive = false;
};

int run_play_fdc(const PlayFdcOpts& o, const std::vector<std::string>& args,
                 std::istream& in, std::ostream& out) {
  if (o.interactive && !o.strategy.empty())
    throw InputError(
        "play-fdc: pass a strategy certificate or --interactive, not both");
  if (!o.interactive && o.strategy.empty())
    throw InputError("play-fdc: pass a strategy certificate or --interactive");
  Selected sel = load_presentation(o.instance, o.scale, "play-fdc");
  const Entourage win = pick_bound(sel, o.bound, o.bound_level, "play-fdc");
  PlayerTwoStrategy p2 = [&] {
    if (o.interactive)
      return interactive_decomposition(in, out, sel.filtration.space);
    Document d = load_certificate(
        o.strategy, {"sfdc", "dimension", "property_c"}, "play-fdc");
    require_same_space(certificate_space(d), sel.filtration.space, "play-fdc");
    return decomposition_strategy_from(d, "play-fdc");
  }();
  const PlayerOneStrategy p1 =
      o.seed ? seeded_player(sel.filtration, *o.seed)
             : constant_player(pick_entourage(sel, o.level, o.scale,
                                              "play-fdc"));
  const GameRules rules{win, o.max_rounds, o.weak};
  const GameTranscript t = play_fdc(sel.filtration.space, p1, p2, rules);
  Json r = new_report("play-fdc", args);
  put_transcript(r, t);
  if (!o.output.empty()) save_document(document_from_transcript(t), o.output);
  print_report(out, r);
  return outcome_code(t.outcome);
}

struct RunSfdcOpts {
  std::string cert, output;
};

int run_run_sfdc(const RunSfdcOpts& o, const std::vector<std::string>& args,
                 std::ostream& out) {
  Document d = load_certificate(o.cert, {"sfdc", "property_c"}, "run-sfdc");
  Json r = new_report("run-sfdc", args);
  SfdcCertificate cert = [&] {
    if (d.certificate_type == "sfdc") return *d.sfdc;
    SfdcCertificate converted = sfdc_from_propc(*d.property_c);
    r["converted_certificate"] =
        document_to_json(document_from_sfdc(converted));
    return converted;
  }();
  const GameTranscript t = run_sfdc(cert.challenge.levels.space,
                                    cert.challenge, strategy_from_sfdc(cert));
  put_transcript(r, t);
  if (!o.output.empty()) save_document(document_from_transcript(t), o.output);
  print_report(out, r);
  return outcome_code(t.outcome);
}

struct PlayGamecOpts {
  std::string instance, strategy, scale, bound, output;
  std::optional<int> level, bound_level;
  int max_rounds = 8;
  bool adversary = false, interactive = false;
};

int run_play_gamec(const PlayGamecOpts& o,
                   const std::vector<std::string>& args, std::istream& in,
                   std::ostream& out) {
  if (o.interactive && !o.strategy.empty())
    throw InputError(
        "play-gamec: pass a strategy certificate or --interactive, not both");
  if (!o.interactive && o.strategy.empty())
    throw InputError(
        "play-gamec: pass a strategy certificate or --interactive");
  Selected sel = load_presentation(o.instance, o.scale, "play-gamec");
  const Entourage win = pick_bound(sel, o.bound, o.bound_level, "play-gamec");
  const Entourage first = pick_entourage(sel, o.level, o.scale, "play-gamec");
  const PlayerOneStrategy p1 =
      o.adversary ? gamec_adversary(first) : constant_player(first);
  CoverStrategy p2 = [&] {
    if (o.interactive) return interactive_cover(in, out);
    Document d = load_certificate(o.strategy, {"dimension"}, "play-gamec");
    require_same_space(d.dimension->scale.space(), sel.filtration.space,
                       "play-gamec");
    return cover_from_dimension(*d.dimension);
  }();
  const GameTranscript t =
      gamec_play(sel.filtration.space, p1, p2, win, o.max_rounds);
  Json r = new_report("play-gamec", args);
  put_transcript(r, t);
  if (!o.output.empty()) save_document(document_from_transcript(t), o.output);
  print_report(out, r);
  return outcome_code(t.outcome);
}

int run_collapse_gamec(const PathOpts& o, const std::vector<std::string>& args,
                       std::ostream& out) {
  Document d = load_kind(o.path, "transcript", "collapse-gamec");
  const CollapseResult res = gamec_collapse(*d.transcript);
  Json r = new_report("collapse-gamec", args);
  r["family"] = json_of_family(res.family);
  r["bound"] = json_of_entourage(res.bound);
  print_report(out, r);
  return 0;
}

struct ProductOpts {
  std::string left, right, output, dot;
};

int run_product(const ProductOpts& o, const std::vector<std::string>& args,
                std::ostream& out) {
  Selected a = load_presentation(o.left, "", "product");
  Selected b = load_presentation(o.right, "", "product");
  const ProductSpace ps = ProductSpace::make(a.filtration, b.filtration);
  Document od = document_from_filtration(ps.levels);
  Json r = new_report("product", args);
  r["points"] = ps.space->size;
  r["depth"] = ps.levels.depth();
  r["filtration"] = document_to_json(od);
  if (!o.output.empty()) save_document(od, o.output);
  if (!o.dot.empty())
    write_text_file(o.dot, dot_of_entourage(ps.space, ps.levels.top()));
  print_report(out, r);
  return 0;
}

struct PullbackOpts {
  std::string map, family, output;
};

int run_pullback(const PullbackOpts& o, const std::vector<std::string>& args,
                 std::ostream& out) {
  Document md = load_certificate(o.map, {"coarse_map"}, "pullback");
  Document fd = load_kind(o.family, "family", "pullback");
  require_same_space(fd.family->space, md.coarse_map->target.space,
                     "pullback");
  const SubsetFamily pulled = pullback_family(*md.coarse_map, *fd.family);
  Document od = document_from_family(pulled);
  Json r = new_report("pullback", args);
  r["family"] = document_to_json(od);
  if (!o.output.empty()) save_document(od, o.output);
  print_report(out, r);
  return 0;
}

struct EquivOpts {
  std::string forward, backward;
  std::optional<int> source_level, target_level;
};

int run_equivalence(const EquivOpts& o, const std::vector<std::string>& args,
                    std::ostream& out) {
  Document fdoc = load_certificate(o.forward, {"coarse_map"}, "equivalence");
  Document gdoc = load_certificate(o.backward, {"coarse_map"}, "equivalence");
  const CoarseMap& f = *fdoc.coarse_map;
  const CoarseMap& g = *gdoc.coarse_map;
  const Entourage sc = o.source_level
                           ? level_of(f.source, *o.source_level, "equivalence")
                           : f.source.top();
  const Entourage tc = o.target_level
                           ? level_of(f.target, *o.target_level, "equivalence")
                           : f.target.top();
  const Verdict v = check_coarse_equivalence(f, g, sc, tc);
  Json r = new_report("equivalence", args);
  put_verdict(r, v);
  print_report(out, r);
  return v.ok() ? 0 : 1;
}

void add_level_scale(CLI::App* c, std::optional<int>& level,
                     std::string& scale) {
  c->add_option("--level", level, "1-based presentation level (default: top)");
  c->add_option("--scale", scale, "radius; space documents only");
}

void add_bound(CLI::App* c, std::string& bound,
               std::optional<int>& bound_level) {
  c->add_option("--bound", bound, "win bound as a radius; needs a metric");
  c->add_option("--bound-level", bound_level,
                "win bound as a 1-based presentation level");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  CLI::App app{"verifiable computations on finitely presented coarse spaces"};
  app.require_subcommand(1);
  int code = 0;

  auto cd = std::make_shared<CheckOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "check-disjoint", "is the family disjoint at the entourage");
    c->add_option("family", cd->family, "family document")->required();
    c->add_option("instance", cd->instance, "space or filtration document")
        ->required();
    add_level_scale(c, cd->level, cd->scale);
    c->add_option("--emit-dot", cd->dot, "write the entourage as DOT");
    c->callback([&, cd] { code = run_check(true, *cd, args, out); });
  }

  auto cb = std::make_shared<CheckOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "check-bounded", "is the family bounded by the entourage");
    c->add_option("family", cb->family, "family document")->required();
    c->add_option("instance", cb->instance, "space or filtration document")
        ->required();
    add_level_scale(c, cb->level, cb->scale);
    c->add_option("--emit-dot", cb->dot, "write the entourage as DOT");
    c->callback([&, cb] { code = run_check(false, *cb, args, out); });
  }

  auto vpc = std::make_shared<PathOpts>();
  {
    CLI::App* c = app.add_subcommand("verify-propc",
                                     "verify a covering certificate");
    c->add_option("certificate", vpc->path, "property_c certificate")
        ->required();
    c->callback([&, vpc] { code = run_verify_propc(*vpc, args, out); });
  }

  auto vdc = std::make_shared<PathOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "verify-decomp",
        "verify a dimension, sfdc, or family_decomposition certificate");
    c->add_option("certificate", vdc->path, "certificate document")
        ->required();
    c->callback([&, vdc] { code = run_verify_decomp(*vdc, args, out); });
  }

  auto vpa = std::make_shared<VerifyPropaOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "verify-propa", "verify an averaging witness at an entourage");
    c->add_option("witness", vpa->witness, "property_a_witness certificate")
        ->required();
    c->add_option("instance", vpa->instance, "space or filtration document")
        ->required();
    add_level_scale(c, vpa->level, vpa->scale);
    c->callback([&, vpa] { code = run_verify_propa(*vpa, args, out); });
  }

  auto sd = std::make_shared<SearchOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "search-dim",
        "search for a dimension certificate at a scale and bound");
    c->add_option("instance", sd->instance, "space or filtration document")
        ->required();
    add_level_scale(c, sd->level, sd->scale);
    add_bound(c, sd->bound, sd->bound_level);
    c->add_option("--n", sd->n, "dimension bound: n+1 families")->required();
    c->add_option("--mode", sd->mode, "exact or greedy (default: exact)")
        ->check(CLI::IsMember({"exact", "greedy"}));
    c->add_option("--output", sd->output, "write the found certificate here");
    c->callback([&, sd] { code = run_search_dim(*sd, args, out); });
  }

  auto bp = std::make_shared<BuildPropaOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "build-propa", "build an averaging witness from a covering config");
    c->add_option("config", bp->config, "property_a_config certificate")
        ->required();
    c->add_option("--epsilon", bp->epsilon,
                  "variation target; needs 8/(n-1) < epsilon")
        ->required();
    c->add_option("--n", bp->n, "override the config's averaging parameter");
    c->add_option("--output", bp->output, "write the witness here");
    c->callback([&, bp] { code = run_build_propa(*bp, args, out); });
  }

  auto pf = std::make_shared<PlayFdcOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "play-fdc", "play the adaptive decomposition game");
    c->add_option("instance", pf->instance, "space or filtration document")
        ->required();
    c->add_option("strategy", pf->strategy,
                  "player 2: sfdc, dimension, or property_c certificate");
    add_level_scale(c, pf->level, pf->scale);
    add_bound(c, pf->bound, pf->bound_level);
    c->add_option("--max-rounds", pf->max_rounds, "rounds to play (default 8)")
        ->check(CLI::Range(1, 1000000));
    c->add_flag("--weak", pf->weak, "allow any arity");
    c->add_option("--seed", pf->seed,
                  "player 1 asserts seeded-random levels instead of the "
                  "selected entourage");
    c->add_flag("--interactive", pf->interactive,
                "read player 2 moves from stdin");
    c->add_option("--output", pf->output, "write the transcript here");
    c->callback([&, pf] { code = run_play_fdc(*pf, args, in, out); });
  }

  auto rs = std::make_shared<RunSfdcOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "run-sfdc", "replay a scripted decomposition certificate");
    c->add_option("certificate", rs->cert,
                  "sfdc certificate, or property_c to convert first")
        ->required();
    c->add_option("--output", rs->output, "write the transcript here");
    c->callback([&, rs] { code = run_run_sfdc(*rs, args, out); });
  }

  auto pg = std::make_shared<PlayGamecOpts>();
  {
    CLI::App* c = app.add_subcommand("play-gamec", "play the cover game");
    c->add_option("instance", pg->instance, "space or filtration document")
        ->required();
    c->add_option("strategy", pg->strategy,
                  "player 2: dimension certificate");
    add_level_scale(c, pg->level, pg->scale);
    add_bound(c, pg->bound, pg->bound_level);
    c->add_flag("--adversary", pg->adversary,
                "player 1 strengthens assertions by saturation");
    c->add_option("--max-rounds", pg->max_rounds,
                  "rounds to play (default 8)")
        ->check(CLI::Range(1, 1000000));
    c->add_flag("--interactive", pg->interactive,
                "read player 2 families from stdin");
    c->add_option("--output", pg->output, "write the transcript here");
    c->callback([&, pg] { code = run_play_gamec(*pg, args, in, out); });
  }

  auto cg = std::make_shared<PathOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "collapse-gamec", "fold a won cover-game transcript into one family");
    c->add_option("transcript", cg->path, "transcript document")->required();
    c->callback([&, cg] { code = run_collapse_gamec(*cg, args, out); });
  }

  auto pr = std::make_shared<ProductOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "product", "presentation of the product of two spaces");
    c->add_option("left", pr->left, "space or filtration document")
        ->required();
    c->add_option("right", pr->right, "space or filtration document")
        ->required();
    c->add_option("--output", pr->output, "write the product filtration here");
    c->add_option("--emit-dot", pr->dot, "write the top level as DOT");
    c->callback([&, pr] { code = run_product(*pr, args, out); });
  }

  auto pb = std::make_shared<PullbackOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "pullback", "preimage of a family along a coarse map");
    c->add_option("map", pb->map, "coarse_map certificate")->required();
    c->add_option("family", pb->family, "family document over the target")
        ->required();
    c->add_option("--output", pb->output, "write the pulled-back family here");
    c->callback([&, pb] { code = run_pullback(*pb, args, out); });
  }

  auto eq = std::make_shared<EquivOpts>();
  {
    CLI::App* c = app.add_subcommand(
        "equivalence", "check two maps witness a coarse equivalence");
    c->add_option("forward", eq->forward, "coarse_map certificate")
        ->required();
    c->add_option("backward", eq->backward, "coarse_map certificate")
        ->required();
    c->add_option("--source-closeness-level", eq->source_level,
                  "1-based level of the forward map's source (default: top)");
    c->add_option("--target-closeness-level", eq->target_level,
                  "1-based level of the forward map's target (default: top)");
    c->callback([&, eq] { code = run_equivalence(*eq, args, out); });
  }

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("coarsec");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}

}  // namespace coarse
