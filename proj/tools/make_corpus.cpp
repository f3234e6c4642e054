// Regenerates the shipped corpus: shapes, diagrams, Rec bases and presheaves,
// each written in canonical JSON, plus MANIFEST.json recording the gates every
// instance passed when generated.
//
//   make_corpus <corpus-dir> [--seed N] [--per-shape K]

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "siftcat/catalog.hpp"
#include "siftcat/decompose.hpp"
#include "siftcat/gen.hpp"
#include "siftcat/io.hpp"

using namespace siftcat;
namespace fs = std::filesystem;

namespace {

CatRef share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

struct Named {
  std::string name;
  CatRef cat;
};

Json shape_gates(const FinCat& c) {
  return Json{{"objects", c.num_objects()},
              {"morphisms", c.num_morphisms()},
              {"sifted", is_sifted(c).sifted},
              {"filtered", is_filtered(c).filtered},
              {"has_pullbacks", has_pullbacks(c).all_exist}};
}

bool decomposition_shape(const FinCat& c) {
  return c.num_objects() <= 6 && c.num_morphisms() <= 25 && is_sifted(c).sifted && has_pullbacks(c).all_exist;
}

std::size_t max_value(const SetDiagram& d) {
  std::size_t m = 0;
  for (const auto& s : d.sets()) m = std::max(m, s.size());
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerate the shipped corpus"};
  std::string dir;
  std::uint64_t seed = 20240601;
  std::size_t per_shape = 10;
  app.add_option("dir", dir, "corpus directory")->required();
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--per-shape", per_shape, "diagrams per decomposition shape");
  CLI11_PARSE(app, argc, argv);

  Rng rng(seed);
  const fs::path root(dir);
  for (const char* sub : {"shapes", "diagrams", "bases", "presheaves"}) {
    fs::remove_all(root / sub);
    fs::create_directories(root / sub);
  }
  Json manifest{{"kind", "corpus-manifest"}, {"seed", seed}, {"files", Json::array()}};
  auto record = [&](const fs::path& rel, const std::string& kind, Json gates) {
    manifest["files"].push_back(Json{{"file", rel.generic_string()}, {"kind", kind}, {"gates", std::move(gates)}});
  };

  // Decomposition shapes: lattices, preorders with isomorphic pairs, and
  // element categories of Sind presheaves that have pullbacks.
  std::vector<Named> shapes;
  for (std::size_t n = 1; n <= 6; ++n) shapes.push_back({"chain-" + std::to_string(n), share(chain_category(n))});
  shapes.push_back({"boolean-2", share(boolean_lattice_category(2))});
  shapes.push_back({"diamond", share(diamond_lattice_category())});
  shapes.push_back({"pentagon", share(pentagon_lattice_category())});
  shapes.push_back({"divisors-12", share(divisor_lattice_category(12))});
  shapes.push_back({"codiscrete-2", share(codiscrete_category(2))});
  shapes.push_back({"codiscrete-3", share(codiscrete_category(3))});
  const CatRef iso_pair_top = share(preorder_category({"a", "b", "t"}, {{"a", "b"}, {"b", "a"}, {"a", "t"}}));
  shapes.push_back({"iso-pair-top", iso_pair_top});
  shapes.push_back(
      {"bottom-iso-pair", share(preorder_category({"0", "a", "b"}, {{"0", "a"}, {"a", "b"}, {"b", "a"}}))});
  for (std::size_t k = 0; k < 6; ++k)
    shapes.push_back({"lattice-r" + std::to_string(k), share(random_lattice(rng, 2 + k % 3))});
  {
    auto base = share(boolean_lattice_category(2));
    std::size_t taken = 0;
    for (const auto& p : enumerate_presheaves(base, 2)) {
      if (taken == 3) break;
      if (!is_in_Sind(p)) continue;
      auto el = category_of_elements(p).category;
      if (el->num_objects() < 3 || !decomposition_shape(*el)) continue;
      shapes.push_back({"elements-" + std::to_string(taken++), el});
    }
  }

  std::size_t diagrams = 0;
  for (const auto& s : shapes) {
    Json gates = shape_gates(*s.cat);
    gates["decomposition_shape"] = decomposition_shape(*s.cat);
    const fs::path rel = fs::path("shapes") / (s.name + ".json");
    save_text(root / rel, canonical_dump(category_to_json(*s.cat)));
    record(rel, "category", gates);
    if (!decomposition_shape(*s.cat)) continue;
    for (std::size_t k = 0; k < per_shape; ++k) {
      SetDiagram d = random_diagram(rng, s.cat, 5, 1 + k % 3);
      DecompositionResult r = sifted_colimit_via_decomposition(s.cat, d);
      const bool checked = check_certificate(r.certificate).ok;
      const fs::path drel = fs::path("diagrams") / (s.name + "-" + std::to_string(k) + ".json");
      save_text(root / drel, canonical_dump(diagram_to_json(d)));
      record(drel, "diagram",
             Json{{"shape", rel.generic_string()},
                  {"max_set_size", max_value(d)},
                  {"colimit_size", r.colimit.size()},
                  {"certificate_checked", checked}});
      ++diagrams;
    }
  }

  // Rec bases: validated categories with all pullbacks, sifted or not.
  std::vector<Named> bases = {{"point", share(terminal_category())},
                              {"arrow", share(arrow_category())},
                              {"boolean-2", share(boolean_lattice_category(2))},
                              {"diamond", share(diamond_lattice_category())},
                              {"pentagon", share(pentagon_lattice_category())},
                              {"codiscrete-2", share(codiscrete_category(2))},
                              {"iso-pair-top", iso_pair_top},
                              {"cyclic-2", share(cyclic_group_category(2))},
                              {"injections-2", share(injections_category(2))}};
  for (const auto& b : bases) {
    const fs::path rel = fs::path("bases") / (b.name + ".json");
    save_text(root / rel, canonical_dump(category_to_json(*b.cat)));
    record(rel, "category", shape_gates(*b.cat));
  }

  // Presheaves in Sind whose element category has pullbacks, over lattice
  // and preorder bases.
  std::size_t presheaves = 0;
  for (const auto& b : {bases[1], bases[2], bases[3], bases[4], bases[5], bases[6]}) {
    std::size_t k = 0;
    for (const auto& p : enumerate_presheaves(b.cat, 2)) {
      if (!is_in_Sind(p)) continue;
      const bool el_pb = has_pullbacks(*category_of_elements(p).category).all_exist;
      if (!el_pb) continue;
      InstanceReport rep = verify_sind_instance(b.cat, p);
      const fs::path rel = fs::path("presheaves") / (b.name + "-" + std::to_string(k++) + ".json");
      save_text(root / rel, canonical_dump(presheaf_to_json(p)));
      record(rel, "presheaf",
             Json{{"in_sind", true},
                  {"element_category_has_pullbacks", el_pb},
                  {"frontier_depth", rep.depth},
                  {"frontier_objects", rep.frontier_objects},
                  {"instance_ok", rep.ok()}});
      ++presheaves;
    }
  }

  save_text(root / "MANIFEST.json", canonical_dump(manifest));
  std::cout << shapes.size() << " shapes, " << diagrams << " diagrams, " << bases.size() << " bases, " << presheaves
            << " presheaves\n";
  return 0;
}
