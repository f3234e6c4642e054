#pragma once

// The acceptance gate: eleven end-to-end criteria over the shipped corpus and
// seeded random instances. Each returns a verdict with counts; exceptions are
// caught and reported as failures.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace siftcat {

struct AcceptanceConfig {
  std::uint64_t seed = 1;
  std::filesystem::path corpus;  // directory with shapes/, diagrams/, bases/, presheaves/
  std::size_t samples = 200;     // per randomized criterion, raised to each criterion's minimum
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

CriterionResult criterion_decomposition_oracle(const AcceptanceConfig& cfg);   // 1
CriterionResult criterion_relation_pipeline(const AcceptanceConfig& cfg);      // 2
CriterionResult criterion_closure(const AcceptanceConfig& cfg);                // 3
CriterionResult criterion_filteredness(const AcceptanceConfig& cfg);           // 4
CriterionResult criterion_reflexivize(const AcceptanceConfig& cfg);            // 5
CriterionResult criterion_graph_calculus(const AcceptanceConfig& cfg);         // 6
CriterionResult criterion_product_commutation(const AcceptanceConfig& cfg);    // 7
CriterionResult criterion_saturation(const AcceptanceConfig& cfg);             // 8
CriterionResult criterion_exactness(const AcceptanceConfig& cfg);              // 9
CriterionResult criterion_instance_verification(const AcceptanceConfig& cfg);  // 10
CriterionResult criterion_certificate_robustness(const AcceptanceConfig& cfg); // 11

using Criterion = std::function<CriterionResult(const AcceptanceConfig&)>;
const std::vector<Criterion>& all_criteria();

// "criterion <id> PASS|FAIL <title>: <detail> (<seconds> s)"
std::string format(const CriterionResult& r);

// Runs every criterion in order, calling report after each.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg,
                                            const std::function<void(const CriterionResult&)>& report = {});

}  // namespace siftcat
