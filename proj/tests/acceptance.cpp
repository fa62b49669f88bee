// Acceptance suite: one PASS/FAIL line per criterion, with indented notes.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "cliffordlab/cliffordlab.hpp"
#include "oracles.hpp"

using namespace cliffordlab;

namespace {

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("violated: " + what);
    }
  }
  void note(std::string text) { notes.push_back(std::move(text)); }
};

using Seconds = std::chrono::duration<double>;

bool report(int id, const std::string& title, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.note(std::string("exception: ") + e.what());
  }
  const Seconds elapsed = std::chrono::steady_clock::now() - start;
  std::printf("%s criterion %d: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), elapsed.count());
  for (const auto& n : v.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
  return v.pass;
}

std::string sig_text(const Signature& s) { return s.to_string(); }

void algebra_kernel(Verdict& v) {
  const auto start = std::chrono::steady_clock::now();
  const auto sigs = oracle::signatures_up_to(8);
  std::mt19937_64 rng(2024);
  for (const auto& sig : sigs) {
    const int d = sig.dim();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        auto ei = CliffordElement::generator(sig, i), ej = CliffordElement::generator(sig, j);
        v.require(ei * ej + ej * ei == CliffordElement::scalar(sig, i == j ? GaussianRational(2 * sig.metric(i)) : GaussianRational(0)),
                  "generator relation in " + sig_text(sig));
      }
    bool assoc = true;
    for (int s = 0; s < 200; ++s) {
      auto a = oracle::random_element(sig, rng), b = oracle::random_element(sig, rng), c = oracle::random_element(sig, rng);
      assoc = assoc && (a * b) * c == a * (b * c);
    }
    v.require(assoc, "associativity in " + sig_text(sig));
    if (sig.odd()) {
      const auto nu = volume_element(sig);
      for (int k = 0; k < d; ++k) {
        auto e = CliffordElement::generator(sig, k);
        v.require(nu * e == e * nu, "centrality of the volume element in " + sig_text(sig));
      }
      const auto nu_c = complex_volume_element(sig);
      v.require(nu_c * nu_c == CliffordElement::one(sig), "complex volume element squares to 1 in " + sig_text(sig));
      auto [plus, minus] = ideal_projectors(sig);
      v.require(plus * plus == plus && minus * minus == minus && (plus * minus).is_zero(), "projector idempotence in " + sig_text(sig));
    }
  }
  const Seconds elapsed = std::chrono::steady_clock::now() - start;
  v.note(std::to_string(sigs.size()) + " signatures with 1 <= p + q <= 8, 200 associativity triples each");
  v.require(elapsed.count() < 30.0, "runtime under 30 s");
}

void representation_dimensions(Verdict& v) {
  for (const auto& sig : oracle::signatures_up_to(8)) {
    const std::size_t expected = std::size_t{1} << (sig.odd() ? (sig.dim() - 1) / 2 : sig.dim() / 2);
    for (Flavor f : irrep_flavors(sig)) {
      const auto rep = build_irrep(sig, f);
      v.require(rep.n() == expected, "dimension of " + std::string(to_string(f)) + " " + sig_text(sig));
      if (f == Flavor::Dirac || sig.dim() > 7) continue;
      v.require(kernel_dim(rep) == sig.blade_count() / 2, "kernel dimension of " + std::string(to_string(f)) + " " + sig_text(sig));
      v.require(kernel_equals_ideal(rep), "kernel equals ideal for " + std::string(to_string(f)) + " " + sig_text(sig));
    }
  }
  v.note("dimensions for d <= 8; Pauli kernels exact for d in {1, 3, 5, 7}");
}

void pauli_structure(Verdict& v) {
  for (const auto& sig : oracle::signatures_up_to(7)) {
    for (Flavor f : irrep_flavors(sig)) v.require(weak_faithful(build_irrep(sig, f)), "weak faithfulness of " + std::string(to_string(f)) + " " + sig_text(sig));
    if (!sig.odd()) continue;
    const auto plus = build_irrep(sig, Flavor::PauliPlus);
    const auto flip = pauli_flip(plus);
    v.require(flip.flipped.flavor() == Flavor::PauliMinus, "flip has the minus flavor for " + sig_text(sig));
    bool on_basis = true;
    for (Blade b = 0; b < sig.blade_count(); ++b) {
      const CMatrix expected = grade(b) % 2 ? CMatrix(-plus.blade_image(b)) : plus.blade_image(b);
      on_basis = on_basis && flip.flipped.blade_image(b) == expected;
    }
    v.require(on_basis, "minus rep equals plus rep composed with parity on all blades of " + sig_text(sig));
    v.require(even_iso_check(plus), "even subalgebra isomorphism for " + sig_text(sig));
  }
}

void group_layer(Verdict& v) {
  for (const auto& sig : oracle::signatures_up_to(6)) {
    const auto rep = build_irrep(sig, irrep_flavors(sig).front());
    std::mt19937_64 rng(100 + sig.p() * 17 + sig.q());
    bool law = true;
    for (int s = 0; s < 100; ++s) law = law && reflection_law(rep, detail::random_non_null_vector(sig, rng));
    v.require(law, "reflection law in " + sig_text(sig));
    const auto xs = sample_group(sig, GroupKind::Gamma, 7, 200);
    bool mult = true;
    for (int s = 0; s < 100; ++s) mult = mult && twisted_norm(xs[2 * s] * xs[2 * s + 1]) == twisted_norm(xs[2 * s]) * twisted_norm(xs[2 * s + 1]);
    v.require(mult, "norm multiplicativity in " + sig_text(sig));
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      const auto rx = retract(xs[s]);
      worst = std::max(worst, std::abs(std::abs(twisted_norm(rx).coefficient(0)) - 1.0));
      worst = std::max(worst, relative_max_abs_diff(twisted_adjoint(rx), twisted_adjoint(to_float(xs[s]))));
    }
    v.require(worst <= 1e-9, "retraction in " + sig_text(sig));
  }
  for (auto [p, q] : {std::pair{3, 0}, {1, 2}, {5, 0}}) {
    const Signature sig(p, q);
    const auto rep = build_irrep(sig, Flavor::PauliPlus);
    bool ok = true;
    for (const auto& x : sample_group(sig, GroupKind::Gamma_s, 9, 50)) ok = ok && odd_iso_roundtrip(rep, x);
    v.require(ok, "odd isomorphism round trip in " + sig_text(sig));
  }
  for (auto [p, q] : {std::pair{2, 0}, {1, 1}, {4, 0}, {2, 2}}) {
    const Signature sig(p, q);
    const auto rep = build_irrep(sig, Flavor::Dirac);
    v.require(evaluation_rank(rep) == sig.blade_count() && sig.blade_count() == rep.n() * rep.n(), "bijectivity in " + sig_text(sig));
    v.require(even_case_check(rep, 11, 20), "even case adjoint in " + sig_text(sig));
  }
}

void mod8_classification(Verdict& v) {
  std::vector<std::string> printed_mismatch, computed_mismatch;
  for (const auto& sig : oracle::signatures_up_to(7)) {
    const auto rrep = realify_rep(build_irrep(sig, irrep_flavors(sig).front()));
    const std::size_t dim = real_commutant(rrep).size();
    const int c = sig.mod8();
    const bool printed_ok = (c == 3 || c == 7) ? dim == 2 : (c == 4 || c == 6) ? dim == 4 : (dim != 1 && dim != 2 && dim != 4);
    if (!printed_ok) printed_mismatch.push_back(sig_text(sig) + " class " + std::to_string(c) + " dim " + std::to_string(dim));
    const auto report = commutant(rrep);
    const auto table = classify_mod8(sig);
    if (report.label != table.label || (report.label != SchurLabel::ReducibleComposite) != table.irreducible_real)
      computed_mismatch.push_back(sig_text(sig));
  }
  v.require(printed_mismatch.empty(), "printed commutant table (irreducible iff class 3, 4, 6, 7)");
  std::string list;
  for (const auto& m : printed_mismatch) list += (list.empty() ? "" : "; ") + m;
  if (!printed_mismatch.empty()) v.note("computed commutant differs from the printed table at: " + list);
  v.note(computed_mismatch.empty() ? "library table (C for 3, 7; H for 4, 5, 6; reducible for 0, 1, 2) agrees with the computed commutant on all d <= 7"
                                   : "library table disagrees with the computed commutant");
  if (!computed_mismatch.empty()) v.pass = false;
}

void fiber_structure(Verdict& v) {
  for (auto [p, q] : {std::pair{3, 0}, {1, 2}, {0, 5}}) {
    const Signature sig(p, q);
    const auto plus_rep = build_irrep(sig, Flavor::PauliPlus);
    const auto rrep = realify_rep(plus_rep);
    const auto report = commutant(rrep);
    const QMatrix j = realify_matrix(evaluate(plus_rep, volume_element(sig)));
    v.require(report.complex_structures.kind == StructureKind::pair && report.complex_structures.matrices.size() == 2 &&
                  structures_in_span(report.basis[1]).size() == 2,
              "exactly two complex structures in the commutant of " + sig_text(sig));
    v.require(report.complex_structures.matrices[0] == j && report.complex_structures.matrices[1] == -j, "structures are +-realify(gamma(nu)) for " + sig_text(sig));
    const auto fiber = fiber_check(rrep);
    v.require(fiber.plus_matches_pauli_plus && fiber.minus_matches_pauli_minus, "complexifications match the Pauli reps for " + sig_text(sig));
    v.require(fiber.pauli_cross_inconsistent, "cross-equivalence system inconsistent for " + sig_text(sig));
    const auto minus_real = realify_rep(build_irrep(sig, Flavor::PauliMinus));
    const bool witness = iso_minus_witness(rrep, rrep).has_value() || iso_minus_witness(rrep, minus_real).has_value() ||
                         iso_minus_witness(minus_real, rrep).has_value();
    v.require(witness, "structure-reversing based equivalence exists for " + sig_text(sig));
    if (!witness && antilinear_pauli_witness(sig))
      v.note(sig_text(sig) + ": no structure-reversing based equivalence (J+ lies in the image); realify(Pauli+) -> realify(Pauli-) exists and reverses i Id");
  }
  for (auto [p, q] : {std::pair{0, 2}, {0, 4}}) {
    const Signature sig(p, q);
    const auto rrep = realify_rep(build_irrep(sig, Flavor::Dirac));
    const auto report = commutant(rrep);
    v.require(quaternion_relations(rrep, report.complex_structures), "quaternion relations for " + sig_text(sig));
    const auto& m = report.complex_structures.matrices;
    int good = 0;
    if (m.size() == 3)
      for (const auto& [a, b, c] : rational_sphere_points(20)) good += (m[0] * a + m[1] * b + m[2] * c) * (m[0] * a + m[1] * b + m[2] * c) == -QMatrix::identity(rrep.m());
    v.require(good == 20, "20 rational sphere points give complex structures for " + sig_text(sig));
  }
}

void cocycle_functors(Verdict& v) {
  for (auto [p, q, f] : {std::tuple{3, 0, Flavor::PauliPlus}, {2, 0, Flavor::Dirac}, {1, 2, Flavor::PauliMinus}}) {
    auto rep = std::make_shared<const MatrixRep>(build_irrep(Signature(p, q), f));
    const CMatrix seam = rep->generator(0) * rep->generator(1);
    const std::vector<std::pair<std::string, LipschitzCocycle>> demos{
        {"circle", demo::circle(rep, CMatrix(seam * GaussianRational(3)))},
        {"sphere", demo::sphere(rep, 21)},
        {"torus", demo::torus(rep, seam, CMatrix(CMatrix::identity(rep->n()) * GaussianRational(2)))}};
    for (const auto& [name, c] : demos) {
      const std::string where = name + " " + rep->sig().to_string();
      v.require(validate_cocycle(c).valid, "valid demo " + where);
      const auto reduced = reduce_cocycle(c);
      const auto again = reduce_cocycle(include_cocycle(reduced));
      if (reduced.exact()) {
        v.require(transition_identical(again, reduced), "reduce after include is the identity, exact, on " + where);
      } else {
        v.require(max_transition_distance(again, reduced) <= kRoundoffTolerance, "reduce after include is the identity on " + where);
        v.note(where + ": reduced transitions are irrational, compared in floating point");
      }
      v.require(max_transition_distance(frame_projection(reduced), frame_projection(c)) <= 1e-9, "frame projection after reduce on " + where);
      const auto action = clifford_action_check(c, 3, 20);
      v.require(action.ok && action.exact, "exact Clifford action on " + where);
      bool gauge_ok = true;
      for (int s = 0; s < 50; ++s) {
        const auto h = random_gauge(c, 1000 + s);
        for (const auto& [loop, seq] : c.nerve.loops) gauge_ok = gauge_ok && monodromy_gauge_check(c, h, loop).ok();
      }
      v.require(gauge_ok, "monodromy gauge invariance over 50 gauges on " + where);
      v.require(transition_identical(associated_pinor_cocycle(include_cocycle(reduced)), associated_pinor_cocycle(reduced)),
                "associated pinor bundle of the included cocycle on " + where);
    }
    const auto& circle = demos.front().second;
    std::vector<GroupMatrix> us;
    for (const auto& x : sample_group(rep->sig(), GroupKind::Gamma, 5, 5)) us.push_back(evaluate(*rep, x));
    double worst = 0.0;
    bool ok = true;
    for (const auto& x : sample_group(rep->sig(), GroupKind::Gamma, 6, 50)) {
      const auto check = natural_iso_fiber_check(circle, evaluate(*rep, x), us);
      ok = ok && check.ok();
      worst = std::max(worst, check.residual);
    }
    v.require(ok, "natural isomorphism on fibers for " + rep->sig().to_string());
    std::ostringstream text;
    text << rep->sig().to_string() << ": natural isomorphism worst residual " << worst;
    v.note(text.str());
  }
}

void orientability(Verdict& v) {
  for (auto [p, q] : {std::pair{3, 0}, {1, 2}, {0, 1}, {0, 5}}) {
    const Signature sig(p, q);
    const auto bad = demo::non_orientable_circle(sig);
    bool reversing = false;
    for (const auto& [e, frame] : bad.frames) reversing = reversing || determinant(frame) == -1;
    v.require(reversing, "non-orientable demo has a det -1 frame for " + sig_text(sig));
    v.require(!global_volume_structure(bad), "no certificate on the non-orientable demo for " + sig_text(sig));
    const auto good = demo::orientable_circle(sig);
    const auto j = global_volume_structure(good);
    v.require(j.has_value(), "certificate on the orientable demo for " + sig_text(sig));
    if (!j) continue;
    bool commutes = *j * *j == -QMatrix::identity(good.rrep->m());
    for (const auto& [e, g] : good.transitions) commutes = commutes && g * *j == *j * g;
    v.require(commutes, "exact commutation of the certificate for " + sig_text(sig));
  }
}

void full_verify(Verdict& v) {
  const std::string cmd = std::string(CLIFFORDLAB_CLI) + " verify --max-dim 6 --suite all > /dev/null";
  const auto start = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const Seconds elapsed = std::chrono::steady_clock::now() - start;
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  v.require(code == 0, "verify exit code 0 (got " + std::to_string(code) + ")");
  v.require(elapsed.count() < 300.0, "runtime under 5 minutes");
  std::ostringstream text;
  text << "verify --max-dim 6 --suite all: exit " << code << " in " << elapsed.count() << " s";
  v.note(text.str());
}

}  // namespace

int main() {
  int failed = 0;
  failed += !report(1, "algebra kernel over all signatures with d <= 8", algebra_kernel);
  failed += !report(2, "representation dimensions and Pauli kernels", representation_dimensions);
  failed += !report(3, "weak faithfulness and Pauli structure", pauli_structure);
  failed += !report(4, "group layer", group_layer);
  failed += !report(5, "mod-8 classification of the realified commutant", mod8_classification);
  failed += !report(6, "fiber structure of realification", fiber_structure);
  failed += !report(7, "cocycle functors on demo nerves", cocycle_functors);
  failed += !report(8, "orientability and global complex structure", orientability);
  failed += !report(9, "full verify over d <= 6", full_verify);
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
