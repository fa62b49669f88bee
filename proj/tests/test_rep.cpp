#include <gtest/gtest.h>

#include "cliffordlab/rep.hpp"
#include "oracles.hpp"

using namespace cliffordlab;

namespace {

GaussianRational I() { return GaussianRational::i(); }

// Smallest submodule containing v: span of all blade images applied to v.
std::size_t cyclic_submodule_dim(const MatrixRep& rep, const std::vector<GaussianRational>& v) {
  RowReducer<GaussianRational> span(rep.n());
  for (const auto& m : rep.blade_images()) span.add_dense_row(m * v);
  return span.rank();
}

// Reducible iff some vector generates a proper submodule. Probing the
// standard basis, pairwise sums and i-twisted sums covers the reps used here.
bool oracle_irreducible(const MatrixRep& rep) {
  const std::size_t n = rep.n();
  std::vector<std::vector<GaussianRational>> probes;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<GaussianRational> v(n, GaussianRational(0));
    v[a] = 1;
    probes.push_back(v);
    for (std::size_t b = a + 1; b < n; ++b) {
      auto w = v;
      w[b] = 1;
      probes.push_back(w);
      w[b] = -1;
      probes.push_back(w);
      w[b] = I();
      probes.push_back(w);
      w[b] = -I();
      probes.push_back(w);
    }
  }
  for (const auto& v : probes)
    if (cyclic_submodule_dim(rep, v) < n) return false;
  return true;
}

}  // namespace

TEST(BuildIrrep, PauliPlusThreeZeroIsSpinMatrices) {
  auto rep = build_irrep(Signature(3, 0), Flavor::PauliPlus);
  EXPECT_EQ(rep.n(), 2u);
  EXPECT_EQ(rep.generator(0), (CMatrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(rep.generator(1), (CMatrix{{0, -I()}, {I(), 0}}));
  EXPECT_EQ(rep.generator(2), (CMatrix{{1, 0}, {0, -1}}));
  EXPECT_EQ(rep.blade_image(top_blade(rep.sig())), CMatrix::identity(2) * I());
  EXPECT_EQ(evaluate(rep, complex_volume_element(rep.sig())), CMatrix::identity(2));
}

TEST(BuildIrrep, DimensionsAndRelationsUpToEight) {
  for (const auto& sig : oracle::signatures_up_to(8))
    for (Flavor f : irrep_flavors(sig)) {
      auto rep = build_irrep(sig, f);
      const std::size_t expected = std::size_t{1} << (sig.odd() ? (sig.dim() - 1) / 2 : sig.dim() / 2);
      EXPECT_EQ(rep.n(), expected) << sig.to_string();
      for (const auto& g : rep.generators())
        for (const auto& v : g.data())
          ASSERT_TRUE(v.is_zero() || v.norm2() == 1);
    }
}

TEST(BuildIrrep, RejectsParityMismatch) {
  EXPECT_THROW(build_irrep(Signature(3, 0), Flavor::Dirac), std::invalid_argument);
  EXPECT_THROW(build_irrep(Signature(2, 0), Flavor::PauliPlus), std::invalid_argument);
  EXPECT_THROW(MatrixRep::make(Signature(2, 0), {CMatrix{{1}}, CMatrix{{1}}}), std::invalid_argument);
}

TEST(Evaluate, MorphismAndProjectors) {
  auto dirac = build_irrep(Signature(2, 0), Flavor::Dirac);
  Signature s20(2, 0);
  EXPECT_EQ(evaluate(dirac, CliffordElement::one(s20)), CMatrix::identity(2));
  EXPECT_EQ(evaluate(dirac, CliffordElement::blade(s20, 3)), dirac.generator(0) * dirac.generator(1));
  auto pauli = build_irrep(Signature(3, 0), Flavor::PauliPlus);
  auto [plus, minus] = ideal_projectors(pauli.sig());
  EXPECT_EQ(evaluate(pauli, plus), CMatrix::identity(2));
  EXPECT_TRUE(evaluate(pauli, minus).is_zero());
  std::mt19937_64 rng(1);
  for (const auto& sig : oracle::signatures_up_to(5)) {
    auto rep = build_irrep(sig, irrep_flavors(sig).front());
    for (int t = 0; t < 5; ++t) {
      auto a = oracle::random_element(sig, rng), b = oracle::random_element(sig, rng);
      ASSERT_EQ(evaluate(rep, a * b), evaluate(rep, a) * evaluate(rep, b));
    }
  }
}

TEST(WeakFaithful, IrreduciblesAndSums) {
  for (const auto& sig : oracle::signatures_up_to(7))
    for (Flavor f : irrep_flavors(sig)) EXPECT_TRUE(weak_faithful(build_irrep(sig, f)));
  auto p = build_irrep(Signature(3, 0), Flavor::PauliPlus);
  EXPECT_TRUE(weak_faithful(direct_sum(p, p)));
}

TEST(WeakFaithful, RankMatchesNullspaceOracle) {
  for (const auto& sig : oracle::signatures_up_to(5)) {
    auto rep = build_irrep(sig, irrep_flavors(sig).front());
    const std::size_t n2 = rep.n() * rep.n();
    QMatrix coords(2 * n2, sig.dim());
    for (int k = 0; k < sig.dim(); ++k)
      for (std::size_t e = 0; e < n2; ++e) {
        coords(e, k) = rep.generator(k).data()[e].re;
        coords(n2 + e, k) = rep.generator(k).data()[e].im;
      }
    EXPECT_TRUE(nullspace(coords).empty());
  }
}

TEST(KernelDim, Examples) {
  EXPECT_EQ(kernel_dim(build_irrep(Signature(2, 0), Flavor::Dirac)), 0u);
  EXPECT_EQ(kernel_dim(build_irrep(Signature(3, 0), Flavor::PauliPlus)), 4u);
  EXPECT_EQ(kernel_dim(build_irrep(Signature(1, 0), Flavor::PauliMinus)), 1u);
}

TEST(KernelDim, PauliKernelIsTheIdeal) {
  for (int d : {1, 3, 5, 7})
    for (int p : {0, 1, d}) {
      Signature sig(p, d - p);
      for (Flavor f : irrep_flavors(sig)) {
        auto rep = build_irrep(sig, f);
        EXPECT_EQ(kernel_dim(rep), sig.blade_count() / 2);
        EXPECT_TRUE(kernel_equals_ideal(rep)) << sig.to_string();
      }
    }
}

TEST(EvenIso, OddDimensions) {
  EXPECT_TRUE(even_iso_check(build_irrep(Signature(3, 0), Flavor::PauliPlus)));
  EXPECT_TRUE(even_iso_check(build_irrep(Signature(5, 0), Flavor::PauliMinus)));
  EXPECT_TRUE(even_iso_check(build_irrep(Signature(1, 0), Flavor::PauliPlus)));
  EXPECT_THROW(even_iso_check(build_irrep(Signature(2, 0), Flavor::Dirac)), std::invalid_argument);
}

TEST(Irreducible, MatchesInvariantSubspaceOracle) {
  std::vector<MatrixRep> reps;
  for (const auto& sig : oracle::signatures_up_to(5))
    for (Flavor f : irrep_flavors(sig))
      if (build_irrep(sig, f).n() <= 4) reps.push_back(build_irrep(sig, f));
  reps.push_back(direct_sum(build_irrep(Signature(2, 0), Flavor::Dirac), build_irrep(Signature(2, 0), Flavor::Dirac)));
  reps.push_back(direct_sum(build_irrep(Signature(3, 0), Flavor::PauliPlus), build_irrep(Signature(3, 0), Flavor::PauliMinus)));
  reps.push_back(direct_sum(build_irrep(Signature(1, 0), Flavor::PauliPlus), build_irrep(Signature(1, 0), Flavor::PauliPlus)));
  for (const auto& rep : reps) EXPECT_EQ(irreducible(rep), oracle_irreducible(rep)) << rep.sig().to_string();
  EXPECT_TRUE(irreducible(build_irrep(Signature(1, 1), Flavor::Dirac)));
  EXPECT_FALSE(irreducible(reps[reps.size() - 3]));
}

TEST(PauliFlip, ParityAndFlavor) {
  for (int d : {1, 3, 5, 7}) {
    Signature sig(d / 2, d - d / 2);
    auto plus = build_irrep(sig, Flavor::PauliPlus);
    auto [phi0, minus] = pauli_flip(plus);
    EXPECT_EQ(minus.flavor(), Flavor::PauliMinus);
    EXPECT_EQ(phi0, Isometry::minus_identity(sig));
    EXPECT_TRUE(flip_matches_parity(plus, minus));
    EXPECT_EQ(evaluate(minus, complex_volume_element(sig)), -CMatrix::identity(plus.n()));
    auto back = pauli_flip(minus).flipped;
    EXPECT_EQ(back.flavor(), Flavor::PauliPlus);
    EXPECT_EQ(back.generators(), plus.generators());
    std::mt19937_64 rng(d);
    for (int t = 0; t < 5; ++t) {
      auto a = oracle::random_element(sig, rng);
      EXPECT_EQ(evaluate(plus, cl_map(phi0, a)), evaluate(minus, a));
    }
    auto equiv = based_equivalence(minus, build_irrep(sig, Flavor::PauliMinus));
    EXPECT_TRUE(equiv);
    EXPECT_FALSE(based_equivalence(plus, minus));
  }
  EXPECT_THROW(pauli_flip(build_irrep(Signature(2, 0), Flavor::Dirac)), std::invalid_argument);
}

TEST(InducedSpace, GramIsStandardForm) {
  EXPECT_EQ(induced_space(build_irrep(Signature(2, 0), Flavor::Dirac)).gram, (QMatrix{{1, 0}, {0, 1}}));
  EXPECT_EQ(induced_space(build_irrep(Signature(1, 2), Flavor::PauliPlus)).gram, (QMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}));
  EXPECT_EQ(induced_space(build_irrep(Signature(1, 1), Flavor::Dirac)).gram, (QMatrix{{1, 0}, {0, -1}}));
}

TEST(BasedEquivalence, ConjugatedDirac) {
  auto rep = build_irrep(Signature(2, 2), Flavor::Dirac);
  CMatrix t = CMatrix::identity(rep.n());
  t(0, 1) = GaussianRational(2);
  t(3, 2) = I();
  auto t_inv = *inverse(t);
  std::vector<CMatrix> gens;
  for (const auto& g : rep.generators()) gens.push_back(t * g * t_inv);
  auto other = MatrixRep::make(rep.sig(), gens);
  auto found = based_equivalence(rep, other);
  ASSERT_TRUE(found);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(*found * rep.generator(k), other.generator(k) * *found);
}
