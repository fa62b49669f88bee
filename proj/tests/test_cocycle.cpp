#include <gtest/gtest.h>

#include "cliffordlab/cocycle.hpp"

using namespace cliffordlab;

namespace {

std::shared_ptr<const MatrixRep> rep_of(int p, int q, Flavor f) {
  return std::make_shared<const MatrixRep>(build_irrep(Signature(p, q), f));
}

CMatrix product(const MatrixRep& rep, int a, int b) { return rep.generator(a) * rep.generator(b); }

const GaussianRational kI = GaussianRational::i();

}  // namespace

TEST(Nerve, RejectsMalformed) {
  Nerve n = demo::circle_nerve();
  EXPECT_NO_THROW(n.validate());
  Nerve missing_reverse = n;
  missing_reverse.overlaps.pop_back();
  EXPECT_THROW(missing_reverse.validate(), MalformedNerve);
  Nerve bad_triple = n;
  bad_triple.triples.push_back({0, 1, 3});
  EXPECT_THROW(bad_triple.validate(), MalformedNerve);
  Nerve open_loop = n;
  open_loop.loops["open"] = {0, 1, 2};
  EXPECT_THROW(open_loop.validate(), MalformedNerve);
}

TEST(Cocycle, CircleValidAndMonodromy) {
  auto rep = rep_of(2, 0, Flavor::Dirac);
  const CMatrix g = product(*rep, 0, 1);
  auto c = demo::circle(rep, g);
  EXPECT_TRUE(validate_cocycle(c).valid);
  EXPECT_EQ(std::get<CMatrix>(monodromy(c, "main")), g);
  auto frame = frame_projection(c);
  EXPECT_TRUE(validate_cocycle(frame).valid);
  EXPECT_EQ(std::get<CMatrix>(monodromy(frame, "main")), to_complex(QMatrix{{-1, 0}, {0, -1}}));
  EXPECT_THROW(monodromy(c, "nope"), std::invalid_argument);
}

TEST(Cocycle, BrokenTripleReported) {
  auto rep = rep_of(2, 0, Flavor::Dirac);
  auto c = demo::sphere(rep, 3);
  ASSERT_TRUE(validate_cocycle(c).valid);
  const CMatrix g = product(*rep, 0, 1);
  c.transitions[{1, 2}] = g;
  c.transitions[{2, 1}] = *inverse(g);
  auto verdict = validate_cocycle(c);
  EXPECT_FALSE(verdict.valid);
  EXPECT_FALSE(verdict.failing_triples.empty());
  for (const auto& f : verdict.failing_triples) EXPECT_GT(f.residual, 0.0);
}

TEST(Cocycle, InverseAndMembershipChecks) {
  auto rep = rep_of(2, 0, Flavor::Dirac);
  auto c = demo::circle(rep, product(*rep, 0, 1));
  c.transitions[{0, 2}] = CMatrix::identity(2);
  EXPECT_FALSE(validate_cocycle(c).valid);
  CMatrix not_member{{1, 1}, {0, 1}};
  auto d = demo::circle(rep, not_member);
  EXPECT_FALSE(validate_cocycle(d).valid);
}

TEST(Cocycle, ReduceExamples) {
  auto rep = rep_of(2, 0, Flavor::Dirac);
  const CMatrix e12 = product(*rep, 0, 1);
  auto two = demo::circle(rep, CMatrix(CMatrix::identity(2) * GaussianRational(2)));
  auto r = reduce_cocycle(two);
  EXPECT_TRUE(validate_cocycle(r).valid);
  EXPECT_EQ(std::get<CMatrix>(r.at(2, 0)), CMatrix::identity(2));
  auto three = reduce_cocycle(demo::circle(rep, CMatrix(e12 * GaussianRational(3))));
  EXPECT_EQ(std::get<CMatrix>(three.at(2, 0)), e12);
  auto back = include_cocycle(three);
  EXPECT_EQ(back.tag, CocycleTag::Lipschitz);
  EXPECT_TRUE(transition_identical(back, three));
}

TEST(Cocycle, ReductionCommutesWithFrameProjection) {
  for (auto [p, q, f] : {std::tuple{2, 0, Flavor::Dirac}, {3, 0, Flavor::PauliPlus}, {1, 2, Flavor::PauliMinus}, {2, 2, Flavor::Dirac}}) {
    auto rep = rep_of(p, q, f);
    auto c = demo::sphere(rep, 11);
    ASSERT_TRUE(validate_cocycle(c).valid);
    auto r = reduce_cocycle(c);
    EXPECT_TRUE(validate_cocycle(r).valid) << p << "," << q;
    EXPECT_LE(max_transition_distance(frame_projection(r), frame_projection(c)), 1e-9);
  }
}

TEST(Cocycle, FloatReductionStaysCocycle) {
  auto rep = rep_of(2, 0, Flavor::Dirac);
  const CMatrix g = CMatrix::identity(2) + product(*rep, 0, 1);
  auto r = reduce_cocycle(demo::circle(rep, g));
  EXPECT_FALSE(r.exact());
  EXPECT_TRUE(validate_cocycle(r).valid);
  EXPECT_TRUE(clifford_action_check(r, 5, 20).ok);
}

TEST(Cocycle, PinorRoundTrip) {
  auto rep = rep_of(3, 0, Flavor::PauliPlus);
  auto c = demo::sphere(rep, 2);
  auto pinor = associated_pinor_cocycle(c);
  EXPECT_EQ(pinor.tag, CocycleTag::PinorTransition);
  auto back = lipschitz_from_pinor(pinor);
  EXPECT_TRUE(transition_identical(back, c));
  EXPECT_EQ(back.tag, CocycleTag::Lipschitz);
}

TEST(Cocycle, CliffordActionIndependentOfRepresentative) {
  for (auto [p, q, f] : {std::tuple{2, 0, Flavor::Dirac}, {3, 0, Flavor::PauliPlus}, {0, 3, Flavor::PauliMinus}, {1, 3, Flavor::Dirac}}) {
    auto c = demo::sphere(rep_of(p, q, f), 7);
    auto v = clifford_action_check(c, 9, 15);
    EXPECT_TRUE(v.ok) << p << "," << q;
    EXPECT_TRUE(v.exact);
  }
}

TEST(Cocycle, GaugeInvariantMonodromy) {
  auto rep = rep_of(3, 0, Flavor::PauliPlus);
  auto c = demo::torus(rep, product(*rep, 0, 1), CMatrix(CMatrix::identity(2) * GaussianRational(2)));
  ASSERT_TRUE(validate_cocycle(c).valid);
  EXPECT_EQ(std::get<CMatrix>(monodromy(c, "a")), product(*rep, 0, 1));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto h = random_gauge(c, seed);
    EXPECT_TRUE(validate_cocycle(gauge_transform(c, h)).valid);
    EXPECT_TRUE(monodromy_gauge_check(c, h, "a").ok());
    EXPECT_TRUE(monodromy_gauge_check(c, h, "b").ok());
  }
}

TEST(Cocycle, TorusRejectsNonCommuting) {
  auto rep = rep_of(3, 0, Flavor::PauliPlus);
  EXPECT_THROW(demo::torus(rep, rep->generator(0), rep->generator(1)), std::invalid_argument);
}

TEST(Cocycle, NaturalIsoFiber) {
  auto rep = rep_of(2, 0, Flavor::Dirac);
  auto c = demo::circle(rep, product(*rep, 0, 1));
  std::vector<GroupMatrix> us;
  for (const auto& x : sample_group(rep->sig(), GroupKind::Gamma, 4, 5)) us.push_back(evaluate(*rep, x));
  for (const auto& x : sample_group(rep->sig(), GroupKind::Gamma, 8, 5)) {
    auto check = natural_iso_fiber_check(c, evaluate(*rep, x), us);
    EXPECT_TRUE(check.ok()) << check.residual;
  }
}

TEST(RealPinor, VolumeStructureOrientable) {
  auto c = demo::orientable_circle();
  auto j = global_volume_structure(c);
  ASSERT_TRUE(j);
  EXPECT_EQ(*j * *j, -QMatrix::identity(c.rrep->m()));
  for (const auto& [e, g] : c.transitions) EXPECT_EQ(g * *j, *j * g);
}

TEST(RealPinor, VolumeStructureNonOrientable) {
  auto c = demo::non_orientable_circle();
  EXPECT_EQ(c.frames.at({2, 0}), -QMatrix::identity(3));
  EXPECT_EQ(determinant(c.frames.at({2, 0})), -1);
  EXPECT_FALSE(global_volume_structure(c));
}

TEST(RealPinor, RequiresComplexClass) {
  auto rep = rep_of(2, 0, Flavor::Dirac);
  auto c = realify_cocycle(demo::circle(rep, product(*rep, 0, 1)));
  EXPECT_THROW(global_volume_structure(c), std::invalid_argument);
}

namespace {

LipschitzCocycle identity_on(const Nerve& nerve, std::shared_ptr<const MatrixRep> rep) {
  LipschitzCocycle c{nerve, rep, {}, CocycleTag::Lipschitz};
  for (const auto& e : nerve.overlaps) c.transitions.emplace(e, CMatrix::identity(rep->n()));
  return c;
}

}  // namespace

TEST(CocycleExamples, IdentityCocycle) {
  auto rep = rep_of(3, 0, Flavor::PauliPlus);
  auto sphere_nerve = demo::sphere(rep, 0).nerve;
  auto c = identity_on(sphere_nerve, rep);
  EXPECT_TRUE(validate_cocycle(c).valid);
  const GroupMatrix id3 = CMatrix::identity(3);
  for (const auto& [e, g] : frame_projection(c).transitions) EXPECT_TRUE(group_equal(g, id3));
  EXPECT_EQ(std::get<CMatrix>(monodromy(c, "equator")), CMatrix::identity(2));
  EXPECT_TRUE(transition_identical(associated_pinor_cocycle(c), c));
  EXPECT_TRUE(transition_identical(reduce_cocycle(include_cocycle(reduce_cocycle(c))), reduce_cocycle(c)));
  EXPECT_TRUE(clifford_action_check(c, 1, 10).ok);
  EXPECT_TRUE(global_volume_structure(c));
}

TEST(CocycleExamples, ScalarCocycle) {
  auto rep = rep_of(2, 0, Flavor::Dirac);
  const GaussianRational z(Rational(3), Rational(4));
  auto c = demo::circle(rep, CMatrix(CMatrix::identity(2) * z));
  EXPECT_TRUE(validate_cocycle(c).valid);
  for (const auto& [e, g] : frame_projection(c).transitions) EXPECT_EQ(std::get<CMatrix>(g), CMatrix::identity(2));
  EXPECT_EQ(std::get<CMatrix>(monodromy(c, "main")), CMatrix::identity(2) * z);
  EXPECT_EQ(std::get<CMatrix>(monodromy(reduce_cocycle(c), "main")), CMatrix::identity(2) * GaussianRational(Rational(3, 5), Rational(4, 5)));
  EXPECT_TRUE(clifford_action_check(c, 2, 10).ok);
}

TEST(CocycleExamples, ReducedCocycleUnchanged) {
  auto rep = rep_of(2, 0, Flavor::Dirac);
  auto once = reduce_cocycle(demo::sphere(rep, 4));
  EXPECT_LE(max_transition_distance(reduce_cocycle(include_cocycle(once)), once), 1e-12);
  EXPECT_TRUE(transition_identical(include_cocycle(once), once));
  EXPECT_LE(max_transition_distance(frame_projection(include_cocycle(once)), frame_projection(once)), 0.0);
}

TEST(CocycleExamples, ActionWithReflectionTransition) {
  auto rep = rep_of(2, 0, Flavor::Dirac);
  auto c = demo::circle(rep, rep->generator(0));
  ASSERT_TRUE(validate_cocycle(c).valid);
  auto el = lipschitz_member(rep->generator(0), rep);
  ASSERT_TRUE(el);
  const Signature sig(2, 0);
  const auto y = CliffordElement::generator(sig, 1);
  const CMatrix g = rep->generator(0);
  EXPECT_EQ(evaluate(*rep, y) * g, g * evaluate(*rep, cl_map(el->phi0.inverse(), y)));
  EXPECT_TRUE(clifford_action_check(c, 3, 20).ok);
}

TEST(CocycleExamples, PinorMonodromyIsTautological) {
  auto rep = rep_of(3, 0, Flavor::PauliPlus);
  const CMatrix g = rep->generator(0) * rep->generator(1) * GaussianRational(Rational(3, 5), Rational(4, 5));
  auto pinor = associated_pinor_cocycle(demo::circle(rep, g));
  EXPECT_EQ(std::get<CMatrix>(monodromy(pinor, "main")), g);
  auto frame = frame_projection(demo::circle(rep, g));
  auto el = lipschitz_member(g, rep);
  EXPECT_EQ(std::get<CMatrix>(monodromy(frame, "main")), to_complex(el->phi0.matrix()));
}

TEST(CocycleExamples, NaturalIsoFiberExamples) {
  auto rep = rep_of(2, 0, Flavor::Dirac);
  auto c = demo::circle(rep, rep->generator(0));
  const CMatrix id = CMatrix::identity(2);
  auto pinc = natural_iso_fiber_check(c, CMatrix(rep->generator(0) * rep->generator(1) * GaussianRational(Rational(3, 5), Rational(4, 5))));
  EXPECT_TRUE(pinc.ok());
  EXPECT_LE(pinc.residual, 1e-12);
  EXPECT_TRUE(natural_iso_fiber_check(c, CMatrix(id * GaussianRational(2))).ok());
  auto three = natural_iso_fiber_check(c, CMatrix(rep->generator(0) * GaussianRational(3)), 7, 10);
  EXPECT_TRUE(three.ok());
  EXPECT_LE(three.residual, 1e-9);
  EXPECT_THROW(natural_iso_fiber_check(c, CMatrix{{1, 1}, {0, 1}}), std::invalid_argument);
}

TEST(CocycleExamples, VolumeStructureFromLipschitzCocycle) {
  auto rep = rep_of(3, 0, Flavor::PauliPlus);
  auto j = global_volume_structure(demo::circle(rep, CMatrix(rep->generator(0) * rep->generator(1))));
  ASSERT_TRUE(j);
  EXPECT_EQ(*j, realify_matrix(CMatrix(CMatrix::identity(2) * GaussianRational::i())));
  EXPECT_THROW(global_volume_structure(demo::circle(rep_of(2, 0, Flavor::Dirac), CMatrix::identity(2))), std::invalid_argument);
}

TEST(CocycleExamples, MalformedNerveDistinctError) {
  auto rep = rep_of(2, 0, Flavor::Dirac);
  auto c = demo::circle(rep, rep->generator(0));
  c.nerve.overlaps.push_back({0, 7});
  EXPECT_THROW(validate_cocycle(c), MalformedNerve);
}
