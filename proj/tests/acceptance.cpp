#include <gtest/gtest.h>

#include <iostream>

#include "siftcat/acceptance.hpp"

using namespace siftcat;

namespace {

AcceptanceConfig config() {
  AcceptanceConfig cfg;
  cfg.seed = 1;
  cfg.corpus = SIFTCAT_CORPUS_DIR;
  return cfg;
}

void run(int id) {
  CriterionResult r = all_criteria()[id - 1](config());
  std::cout << format(r) << std::endl;
  EXPECT_EQ(r.id, id);
  EXPECT_TRUE(r.passed) << r.detail;
}

}  // namespace

TEST(Acceptance, Criterion01DecompositionMatchesOracle) { run(1); }
TEST(Acceptance, Criterion02RelationPipeline) { run(2); }
TEST(Acceptance, Criterion03ReflexiveCoequalizerClosure) { run(3); }
TEST(Acceptance, Criterion04ConstructiveFilteredness) { run(4); }
TEST(Acceptance, Criterion05Reflexivization) { run(5); }
TEST(Acceptance, Criterion06GraphCalculus) { run(6); }
TEST(Acceptance, Criterion07SiftedProductCommutation) { run(7); }
TEST(Acceptance, Criterion08SaturationOracle) { run(8); }
TEST(Acceptance, Criterion09Exactness) { run(9); }
TEST(Acceptance, Criterion10InstanceVerification) { run(10); }
TEST(Acceptance, Criterion11CertificateRobustness) { run(11); }
