#pragma once

// Sifted colimits of finite sets computed as filtered colimits of reflexive
// coequalizers over a frontier of Rec(J), with a self-contained certificate,
// an independent checker, the presheaf-level instance check, and transport
// along finite-set endofunctors.

#include <optional>
#include <string>
#include <vector>

#include "siftcat/rec.hpp"

namespace siftcat {

struct CertStage {
  GraphOnObject graph;
  MorId section;
  FinSet value;     // reflexive coequalizer of F(p), F(q)
  Mapping quotient; // F(X) → value
};

struct CertConnection {
  std::size_t from;
  std::size_t to;
  MorId representative;  // canonical X_from → X_to
  Mapping function;      // value(from) → value(to)
};

struct CertCospan {
  std::size_t left, right, apex;
  std::size_t from_left, from_right;  // connection indices
};

struct CertCoequalizer {
  std::size_t first, second;  // parallel connections
  std::size_t map;            // connection out of their common target
};

struct DecompositionCertificate {
  static constexpr const char* kKind = "sifted-colimit-certificate";
  static constexpr int kVersion = 1;

  std::string kind = kKind;
  int version = kVersion;
  std::string digest;  // of the canonical input document
  CatRef shape;
  SetDiagram diagram;
  std::vector<CertStage> stages;           // the first |J| are identity graphs
  std::vector<CertConnection> connections; // every class, by (from, to, representative)
  std::vector<CertCospan> cospans;         // least witness per pair left < right
  std::vector<CertCoequalizer> coequalizers;  // least witness per parallel pair
  FinSet colimit;                          // colimit over the stage category
  std::vector<Mapping> legs;               // per stage, value → colimit
  FinSet oracle;                           // direct colimit of the diagram
  Mapping bijection;                       // colimit → oracle
};

struct DecompositionRound {
  std::size_t stages = 0;
  std::size_t connections = 0;
  std::size_t colimit_size = 0;
  bool added_stages = false;
  bool new_identifications = false;
};

struct DecompositionResult {
  FinSet colimit;
  DecompositionCertificate certificate;
  std::vector<DecompositionRound> rounds;
};

struct DecompositionBudget {
  std::size_t max_rounds = 3;
  std::size_t max_stages = 64;
};

// Throws NotSifted, PullbackAbsent, BudgetExceeded, CheckFailed.
DecompositionResult sifted_colimit_via_decomposition(const CatRef& shape, const SetDiagram& f,
                                                     const DecompositionBudget& budget = {});

// Name of stage i in the stage category.
std::string stage_name(std::size_t i);

struct CheckVerdict {
  bool ok = false;
  std::string failure;  // first failed check
  explicit operator bool() const { return ok; }
};
// Re-verifies every field from the input alone.
CheckVerdict check_certificate(const DecompositionCertificate& cert);

// ---------------------------------------------------------------------------
// Presheaf-level instance of the main theorem.

struct InstanceReport {
  bool element_category_has_pullbacks = false;
  std::size_t depth = 0;           // Rec frontier depth used
  std::size_t frontier_objects = 0;  // objects of Rec(C) ↓ φ
  std::size_t frontier_morphisms = 0;
  bool filtered = false;
  bool colimit_isomorphic = false;
  bool stabilized = false;
  bool atomic = false;
  bool budget_exceeded = false;
  std::string failure;
  bool ok() const { return filtered && colimit_isomorphic && stabilized && atomic && !budget_exceeded; }
};
// Throws PullbackAbsent (base) and ValidationError (φ not in Sind).
InstanceReport verify_sind_instance(const CatRef& c, const Presheaf& phi, std::size_t max_depth = 3,
                                  const RecBudget& budget = {});

// ---------------------------------------------------------------------------
// Transport along T ∈ {(−)×S, (−)^2}.

struct SetEndofunctor {
  enum class Kind { ProductWith, Square };
  Kind kind = Kind::Square;
  FinSet factor;  // S for ProductWith

  static SetEndofunctor product_with(FinSet s) { return {Kind::ProductWith, std::move(s)}; }
  static SetEndofunctor square() { return {Kind::Square, {}}; }
  std::string describe() const;

  FinSet on_set(const FinSet& x) const;
  Mapping on_map(const FinSet& from, const FinSet& to, const Mapping& f) const;
  SetDiagram on_diagram(const SetDiagram& d) const;
};

struct PreservationReport {
  bool reflexive_coequalizers = false;  // T(coeq) ≅ coeq(T∘−) at every stage
  bool filtered_colimit = false;        // colim(T∘stages) ≅ T(colim stages)
  bool matches_direct = false;          // transported colimit ≅ colim(T∘F)
  std::size_t transported_size = 0;
  std::size_t direct_size = 0;
  bool ok() const { return reflexive_coequalizers && filtered_colimit && matches_direct; }
};
PreservationReport preservation_check(const DecompositionResult& decomposition, const SetEndofunctor& t);

}  // namespace siftcat
