// Command-line front end.
//
// Exit codes: 0 ok, 2 validation, 3 budget, 4 check failed, 5 parse.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "siftcat/acceptance.hpp"
#include "siftcat/decompose.hpp"
#include "siftcat/error.hpp"
#include "siftcat/exactness.hpp"
#include "siftcat/io.hpp"

using namespace siftcat;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kValidation = 2, kBudget = 3, kCheckFailed = 4, kParse = 5 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
      return kParse;
    case ErrorKind::BudgetExceeded:
      return kBudget;
    case ErrorKind::CheckFailed:
      return kCheckFailed;
    default:
      return kValidation;
  }
}

struct RunConfig {
  std::string input;
  std::string out;
  std::uint64_t seed = 1;
  std::size_t depth = 2;
  std::size_t max_set_size = 3;
  std::size_t samples = 200;
  std::size_t max_stages = 64;
  bool lenient = false;
  std::string corpus;
};

CatRef share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

void emit(const RunConfig& cfg, const Json& doc) {
  if (!cfg.out.empty()) save_text(cfg.out, canonical_dump(doc));
}

const char* yes(bool b) { return b ? "true" : "false"; }

// Shape of a category or diagram document.
CatRef shape_of(const Json& doc) {
  const std::string kind = document_kind(doc);
  if (kind == "category") return share(category_from_json(doc));
  if (kind == "diagram") return diagram_from_json(doc).shape_ref();
  if (kind == "presheaf") return presheaf_from_json(doc).base_ref();
  throw Error(ErrorKind::ValidationError, "expected a category, diagram or presheaf document, got '" + kind + "'");
}

int cmd_validate(const RunConfig& cfg) {
  std::ifstream in(cfg.input, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  Json doc = parse_json(text.str());
  const std::string kind = document_kind(doc);
  std::string summary;
  Json again;
  if (kind == "category") {
    FinCat c = category_from_json(doc);
    summary = std::to_string(c.num_objects()) + " objects, " + std::to_string(c.num_morphisms()) + " morphisms";
    again = category_to_json(c);
  } else if (kind == "diagram") {
    SetDiagram d = diagram_from_json(doc);
    summary = "over " + std::to_string(d.shape().num_objects()) + " objects";
    again = diagram_to_json(d);
  } else if (kind == "presheaf") {
    Presheaf p = presheaf_from_json(doc);
    summary = std::to_string(p.total_size()) + " elements";
    again = presheaf_to_json(p);
  } else if (kind == DecompositionCertificate::kKind) {
    DecompositionCertificate cert = certificate_from_json(doc);
    summary = std::to_string(cert.stages.size()) + " stages (structure only; use check to verify)";
    again = certificate_to_json(cert);
  } else {
    throw Error(ErrorKind::ValidationError, "unknown document kind '" + kind + "'");
  }
  // Canonical files are a fixed point of parse then serialize.
  std::cout << "valid " << kind << ": " << summary << "\n"
            << "canonical: " << yes(canonical_dump(again) == text.str()) << "\n";
  return kOk;
}

int cmd_classify(const RunConfig& cfg) {
  CatRef c = shape_of(load_json(cfg.input));
  const bool connected = is_connected(*c);
  SiftedVerdict s = is_sifted(*c);
  FilteredVerdict f = is_filtered(*c);
  auto pb = has_pullbacks(*c);
  std::string pb_witness = pb.all_exist ? "all pullbacks exist"
                                        : "no pullback of " + c->name(pb.missing->first) + " and " +
                                              c->name(pb.missing->second);
  std::cout << "connected: " << yes(connected) << "\n"
            << "sifted: " << yes(s.sifted) << " (" << describe(*c, s) << ")\n"
            << "filtered: " << yes(f.filtered) << " (" << describe(*c, f) << ")\n"
            << "has_pullbacks: " << yes(pb.all_exist) << " (" << pb_witness << ")\n";
  emit(cfg, Json{{"kind", "classification"},
                 {"connected", connected},
                 {"sifted", s.sifted},
                 {"sifted_witness", describe(*c, s)},
                 {"filtered", f.filtered},
                 {"filtered_witness", describe(*c, f)},
                 {"has_pullbacks", pb.all_exist},
                 {"pullback_witness", pb_witness}});
  return kOk;
}

int cmd_colim(const RunConfig& cfg) {
  SetDiagram d = diagram_from_json(load_json(cfg.input));
  Cocone co = colimit(d);
  const FinCat& c = d.shape();
  std::cout << "colimit: " << co.apex.size() << " elements\n";
  for (const auto& e : co.apex.elements()) std::cout << "  " << e << "\n";
  Json legs = Json::object();
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    Json leg = Json::object();
    for (std::size_t e = 0; e < d.at(ObjId(x)).size(); ++e)
      leg[d.at(ObjId(x)).name(e)] = co.apex.name(co.legs[x][e]);
    legs[c.name(ObjId(x))] = leg;
  }
  emit(cfg, Json{{"kind", "colimit"}, {"elements", co.apex.elements()}, {"legs", legs}});
  return kOk;
}

int cmd_decompose(const RunConfig& cfg) {
  SetDiagram d = diagram_from_json(load_json(cfg.input));
  DecompositionBudget budget;
  budget.max_rounds = cfg.depth;
  budget.max_stages = cfg.max_stages;
  DecompositionResult r = sifted_colimit_via_decomposition(d.shape_ref(), d, budget);
  std::cout << "colimit: " << r.colimit.size() << " elements via " << r.certificate.stages.size() << " stages, "
            << r.certificate.connections.size() << " connections, " << r.rounds.size() << " rounds\n";
  if (cfg.out.empty()) std::cout << canonical_dump(certificate_to_json(r.certificate));
  emit(cfg, certificate_to_json(r.certificate));
  return kOk;
}

int cmd_check(const RunConfig& cfg) {
  DecompositionCertificate cert = certificate_from_json(load_json(cfg.input));
  CheckVerdict v = check_certificate(cert);
  if (!v) {
    std::cout << "rejected: " << v.failure << "\n";
    return kCheckFailed;
  }
  std::cout << "verified: colimit of " << cert.colimit.size() << " elements over " << cert.stages.size()
            << " stages\n";
  return kOk;
}

int cmd_rec(const RunConfig& cfg) {
  CatRef c = shape_of(load_json(cfg.input));
  RecBudget budget;
  budget.require_pullbacks = !cfg.lenient;
  RecEnumeration e = enumerate_rec(c, cfg.depth, budget);
  std::cout << "frontier at depth " << cfg.depth << ": " << e.objects.size() << " objects\n";
  for (const auto& u : e.objects) std::cout << "  " << describe(*c, u.graph) << "\n";
  emit(cfg, frontier_to_json(*c, e, cfg.depth));
  return kOk;
}

int cmd_exactness(const RunConfig& cfg) {
  ExactnessParams p;
  p.seed = cfg.seed;
  p.samples = cfg.samples;
  p.max_set_size = cfg.max_set_size;
  ExactnessReport rep = exactness_suite(p);
  std::cout << describe(rep);
  Json checks = Json::array();
  for (const auto& c : rep.checks)
    checks.push_back(
        {{"name", c.name}, {"samples", c.samples}, {"counterexamples", c.counterexamples}, {"ok", c.ok()}});
  emit(cfg, Json{{"kind", "exactness-report"}, {"seed", rep.seed}, {"ok", rep.ok()}, {"checks", checks}});
  return rep.ok() ? kOk : kCheckFailed;
}

int cmd_selftest(const RunConfig& cfg) {
  AcceptanceConfig a;
  a.seed = cfg.seed;
  a.samples = cfg.samples;
  a.corpus = cfg.corpus;
  Json results = Json::array();
  bool all = true;
  run_acceptance(a, [&](const CriterionResult& r) {
    std::cout << format(r) << std::endl;
    all = all && r.passed;
    results.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
  });
  std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
  emit(cfg, Json{{"kind", "acceptance-report"}, {"seed", cfg.seed}, {"ok", all}, {"criteria", results}});
  return all ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite sifted colimits: classification, decomposition and certificates"};
  app.require_subcommand(1);
  RunConfig cfg;
#ifdef SIFTCAT_CORPUS_DIR
  cfg.corpus = SIFTCAT_CORPUS_DIR;
#endif
  int (*handler)(const RunConfig&) = nullptr;

  auto add = [&](const char* name, const char* help, int (*h)(const RunConfig&), bool takes_input) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (takes_input) sub->add_option("input", cfg.input, "input document")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", cfg.out, "write the JSON result here");
    sub->callback([&handler, h] { handler = h; });
    return sub;
  };
  add("validate", "parse and validate a document", cmd_validate, true);
  add("classify", "connected / sifted / filtered / pullbacks, with witnesses", cmd_classify, true);
  add("colim", "colimit of a diagram", cmd_colim, true);
  auto* dec = add("decompose", "colimit via Rec stages, with a certificate", cmd_decompose, true);
  dec->add_option("--depth", cfg.depth, "maximum frontier rounds")->check(CLI::PositiveNumber);
  dec->add_option("--max-stages", cfg.max_stages, "maximum stages")->check(CLI::PositiveNumber);
  add("check", "verify a certificate without the builder", cmd_check, true);
  auto* rec = add("rec", "enumerate the Rec frontier of a category", cmd_rec, true);
  rec->add_option("--depth", cfg.depth, "enumeration depth");
  rec->add_flag("--lenient", cfg.lenient, "allow bases without all pullbacks");
  auto* ex = add("exactness", "exactness suite for finite sets", cmd_exactness, false);
  ex->add_option("--seed", cfg.seed, "random seed")->required();
  ex->add_option("--samples", cfg.samples, "samples per check")->check(CLI::PositiveNumber);
  ex->add_option("--max-set-size", cfg.max_set_size, "set size bound")->check(CLI::PositiveNumber);
  auto* self = add("selftest", "run the acceptance criteria", cmd_selftest, false);
  self->add_option("--seed", cfg.seed, "random seed")->required();
  self->add_option("--samples", cfg.samples, "samples per randomized criterion")->check(CLI::PositiveNumber);
  self->add_option("--corpus", cfg.corpus, "corpus directory")->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }
  try {
    return handler(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
}
