#include <gtest/gtest.h>

#include <fstream>

#include "cliffordlab/json_io.hpp"
#include "oracles.hpp"

using namespace cliffordlab;

TEST(JsonIo, ElementFormat) {
  const Signature sig(3, 1);
  CliffordElement x = CliffordElement::blade(sig, 0b101, GaussianRational(Rational(1, 2), Rational(-3, 4)));
  const Json j = element_to_json(x);
  EXPECT_EQ(j.dump(), R"({"sig":[3,1],"terms":[{"blade":[1,3],"im":"-3/4","re":"1/2"}]})");
  EXPECT_EQ(element_from_json(j), x);
}

TEST(JsonIo, ElementRoundTripRandom) {
  std::mt19937_64 rng(3);
  for (const auto& sig : oracle::signatures_up_to(5))
    for (int s = 0; s < 5; ++s) {
      auto x = oracle::random_element(sig, rng);
      const Json j = element_to_json(x);
      EXPECT_EQ(element_from_json(j), x);
      EXPECT_EQ(element_to_json(element_from_json(j)).dump(), j.dump());
    }
}

TEST(JsonIo, ElementRejectsBadBlades) {
  EXPECT_THROW(element_from_json(Json::parse(R"({"sig":[2,0],"terms":[{"blade":[3],"re":"1","im":"0"}]})")), JsonFormatError);
  EXPECT_THROW(element_from_json(Json::parse(R"({"sig":[2,0],"terms":[{"blade":[1,1],"re":"1","im":"0"}]})")), JsonFormatError);
  EXPECT_THROW(element_from_json(Json::parse(R"({"terms":[]})")), JsonFormatError);
}

TEST(JsonIo, RepRoundTripAllFlavors) {
  for (const auto& sig : oracle::signatures_up_to(5))
    for (Flavor f : irrep_flavors(sig)) {
      const auto rep = build_irrep(sig, f);
      const Json j = rep_to_json(rep);
      const auto back = rep_from_json(j);
      EXPECT_EQ(back.generators(), rep.generators());
      EXPECT_EQ(back.flavor(), f);
      EXPECT_EQ(rep_to_json(back).dump(2), j.dump(2));
    }
}

TEST(JsonIo, RepPauliPlusThreeZero) {
  const Json j = rep_to_json(build_irrep(Signature(3, 0), Flavor::PauliPlus));
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["generators"][1].dump(), R"([["0","-i"],["i","0"]])");
}

TEST(JsonIo, RepRejectsBrokenRelations) {
  Json j = rep_to_json(build_irrep(Signature(2, 0), Flavor::Dirac));
  j["generators"][1] = j["generators"][0];
  EXPECT_THROW(rep_from_json(j), std::invalid_argument);
}

TEST(JsonIo, CocycleRoundTripByteStable) {
  auto rep = std::make_shared<const MatrixRep>(build_irrep(Signature(3, 0), Flavor::PauliPlus));
  auto c = demo::torus(rep, rep->generator(0) * rep->generator(1), CMatrix(CMatrix::identity(2) * GaussianRational(2)));
  const std::string text = cocycle_to_json(c).dump(2);
  const auto back = cocycle_from_json(Json::parse(text));
  EXPECT_TRUE(transition_identical(back, c));
  EXPECT_EQ(back.nerve.triples, c.nerve.triples);
  EXPECT_EQ(cocycle_to_json(back).dump(2), text);
}

TEST(JsonIo, MissingReversesFilledByInversion) {
  auto rep = std::make_shared<const MatrixRep>(build_irrep(Signature(2, 0), Flavor::Dirac));
  const CMatrix g = rep->generator(0) * rep->generator(1) * GaussianRational(3);
  Json j = cocycle_to_json(demo::circle(rep, g));
  j["transitions"].erase("0,2");
  j.erase("tag");
  const auto c = cocycle_from_json(j);
  EXPECT_EQ(c.tag, CocycleTag::Lipschitz);
  EXPECT_EQ(std::get<CMatrix>(c.at(0, 2)), *inverse(g));
  EXPECT_TRUE(validate_cocycle(c).valid);
}

TEST(JsonIo, FloatTransitionsLoadIntoFloatLayer) {
  auto rep = std::make_shared<const MatrixRep>(build_irrep(Signature(2, 0), Flavor::Dirac));
  auto reduced = reduce_cocycle(demo::circle(rep, CMatrix::identity(2) + rep->generator(0) * rep->generator(1)));
  ASSERT_FALSE(reduced.exact());
  const auto back = cocycle_from_json(cocycle_to_json(reduced));
  EXPECT_FALSE(back.exact());
  EXPECT_EQ(back.tag, CocycleTag::Reduced);
  EXPECT_LE(max_transition_distance(back, reduced), 1e-15);
  EXPECT_TRUE(validate_cocycle(back).valid);
}

TEST(JsonIo, DemoFilesLoad) {
  for (const char* name : {"circle_spinc.json", "sphere.json", "torus.json", "broken_triple.json"}) {
    std::ifstream in(std::string(CLIFFORDLAB_DEMO_DIR) + "/" + name);
    ASSERT_TRUE(in) << name;
    const auto c = cocycle_from_json(Json::parse(in));
    EXPECT_EQ(validate_cocycle(c).valid, std::string(name) != "broken_triple.json") << name;
  }
}
