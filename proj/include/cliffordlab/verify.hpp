#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cliffordlab/cocycle.hpp"
#include "cliffordlab/json_io.hpp"
#include "cliffordlab/realify.hpp"

namespace cliffordlab {

enum class Status { pass, fail, skip };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "fail";
}

struct PropertyResult {
  std::string suite;
  std::string name;
  Status status = Status::pass;
  double runtime_ms = 0.0;
  Json witness;
};

// Float-layer comparisons of results that agree exactly in exact arithmetic.
inline constexpr double kRoundoffTolerance = 1e-12;

struct VerifyOptions {
  std::uint64_t seed = 0;
  int samples = 20;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "rep", "groups", "realify", "cocycle"};
  return names;
}

struct Outcome {
  Status status = Status::pass;
  Json witness;
  static Outcome ok() { return {}; }
  static Outcome skipped(std::string why) { return {Status::skip, Json{{"reason", std::move(why)}}}; }
  static Outcome failed(Json witness) { return {Status::fail, std::move(witness)}; }
};

namespace detail {

class SuiteRunner {
 public:
  SuiteRunner(std::string suite, std::vector<PropertyResult>& out) : suite_(std::move(suite)), out_(out) {}

  void run(std::string name, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = body();
    } catch (const std::exception& e) {
      outcome = Outcome::failed(Json{{"exception", e.what()}});
    }
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    out_.push_back({suite_, std::move(name), outcome.status, elapsed.count(), std::move(outcome.witness)});
  }

 private:
  std::string suite_;
  std::vector<PropertyResult>& out_;
};

inline CliffordElement random_element(const Signature& sig, std::mt19937_64& rng, int terms = 4) {
  std::uniform_int_distribution<Blade> blade(0, sig.blade_count() - 1);
  CliffordElement x(sig);
  for (int t = 0; t < terms; ++t) x.accumulate(blade(rng), GaussianRational(random_rational(rng), random_rational(rng)));
  return x;
}

inline void algebra_suite(const Signature& sig, const VerifyOptions& opt, std::vector<PropertyResult>& out) {
  SuiteRunner r("algebra", out);
  const int d = sig.dim();
  r.run("generator_relations", [&] {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        auto ei = CliffordElement::generator(sig, i), ej = CliffordElement::generator(sig, j);
        auto expected = CliffordElement::scalar(sig, i == j ? GaussianRational(2 * sig.metric(i)) : GaussianRational(0));
        if (ei * ej + ej * ei != expected) return Outcome::failed({{"i", i + 1}, {"j", j + 1}});
      }
    return Outcome::ok();
  });
  r.run("associativity", [&] {
    std::mt19937_64 rng(opt.seed);
    for (int s = 0; s < opt.samples; ++s) {
      auto a = random_element(sig, rng), b = random_element(sig, rng), c = random_element(sig, rng);
      if ((a * b) * c != a * (b * c)) return Outcome::failed({{"a", element_to_json(a)}, {"b", element_to_json(b)}, {"c", element_to_json(c)}});
    }
    return Outcome::ok();
  });
  r.run("volume_commutation", [&] {
    const auto nu = volume_element(sig);
    for (int k = 0; k < d; ++k) {
      auto e = CliffordElement::generator(sig, k);
      const bool ok = sig.odd() ? nu * e == e * nu : nu * e == -(e * nu);
      if (!ok) return Outcome::failed({{"generator", k + 1}});
    }
    return Outcome::ok();
  });
  r.run("complex_volume_square", [&] {
    if (!sig.odd()) return Outcome::skipped("even dimension");
    const auto nu_c = complex_volume_element(sig);
    if (nu_c * nu_c != CliffordElement::one(sig)) return Outcome::failed({{"square", element_to_json(nu_c * nu_c)}});
    return Outcome::ok();
  });
  r.run("ideal_projectors", [&] {
    if (!sig.odd()) return Outcome::skipped("even dimension");
    auto [plus, minus] = ideal_projectors(sig);
    const bool ok = plus * plus == plus && minus * minus == minus && (plus * minus).is_zero() && plus + minus == CliffordElement::one(sig);
    return ok ? Outcome::ok() : Outcome::failed({{"plus", element_to_json(plus)}});
  });
  r.run("involution_laws", [&] {
    std::mt19937_64 rng(opt.seed + 1);
    for (int s = 0; s < opt.samples; ++s) {
      auto a = random_element(sig, rng), b = random_element(sig, rng);
      const bool ok = involution(a * b, InvolutionKind::reversion_C) == involution(b, InvolutionKind::reversion_C) * involution(a, InvolutionKind::reversion_C) &&
                      parity(a * b) == parity(a) * parity(b) &&
                      involution(a, InvolutionKind::twisted_reversion_C) == involution(involution(a, InvolutionKind::parity_C), InvolutionKind::reversion_C);
      if (!ok) return Outcome::failed({{"a", element_to_json(a)}, {"b", element_to_json(b)}});
    }
    return Outcome::ok();
  });
}

inline void rep_suite(const Signature& sig, const VerifyOptions&, std::vector<PropertyResult>& out) {
  SuiteRunner r("rep", out);
  for (Flavor f : irrep_flavors(sig)) {
    const std::string tag(to_string(f));
    auto rep = std::make_shared<const MatrixRep>(build_irrep(sig, f));
    r.run("dimension_" + tag, [&] {
      const std::size_t expected = std::size_t{1} << (sig.dim() / 2);
      if (rep->n() != expected) return Outcome::failed({{"n", rep->n()}, {"expected", expected}});
      return Outcome::ok();
    });
    r.run("weak_faithful_" + tag, [&] { return weak_faithful(*rep) ? Outcome::ok() : Outcome::failed({{"rank", evaluation_rank(*rep)}}); });
    r.run("irreducible_" + tag, [&] {
      return irreducible(*rep) ? Outcome::ok() : Outcome::failed({{"commutant_dim", complex_commutant(*rep).size()}});
    });
    if (f == Flavor::Dirac) continue;
    r.run("kernel_is_ideal_" + tag, [&] {
      const std::size_t dim = kernel_dim(*rep), expected = sig.blade_count() / 2;
      if (dim != expected || !kernel_equals_ideal(*rep)) return Outcome::failed({{"kernel_dim", dim}, {"expected", expected}});
      return Outcome::ok();
    });
    r.run("even_isomorphism_" + tag, [&] { return even_iso_check(*rep) ? Outcome::ok() : Outcome::failed({{"even_rank", evaluation_rank(*rep, true)}}); });
    r.run("flip_is_parity_" + tag, [&] {
      auto flip = pauli_flip(*rep);
      return flip_matches_parity(*rep, flip.flipped) ? Outcome::ok() : Outcome::failed({{"flavor", std::string(to_string(flip.flipped.flavor()))}});
    });
  }
}

inline void groups_suite(const Signature& sig, const VerifyOptions& opt, std::vector<PropertyResult>& out) {
  SuiteRunner r("groups", out);
  auto rep = std::make_shared<const MatrixRep>(build_irrep(sig, irrep_flavors(sig).front()));
  r.run("reflection_law", [&] {
    std::mt19937_64 rng(opt.seed);
    for (int s = 0; s < opt.samples; ++s) {
      auto w = random_non_null_vector(sig, rng);
      if (!reflection_law(*rep, w)) {
        Json coords = Json::array();
        for (const auto& c : w) coords.push_back(to_string(c));
        return Outcome::failed({{"w", coords}});
      }
    }
    return Outcome::ok();
  });
  r.run("norm_multiplicative", [&] {
    auto xs = sample_group(sig, GroupKind::Gamma, opt.seed, 2 * opt.samples);
    for (int s = 0; s < opt.samples; ++s) {
      const auto& x = xs[2 * s];
      const auto& y = xs[2 * s + 1];
      if (twisted_norm(x * y) != twisted_norm(x) * twisted_norm(y)) return Outcome::failed({{"x", element_to_json(x)}, {"y", element_to_json(y)}});
    }
    return Outcome::ok();
  });
  r.run("membership_of_samples", [&] {
    for (GroupKind kind : {GroupKind::Gamma, GroupKind::Gamma_s, GroupKind::Pinc, GroupKind::Spinc})
      for (const auto& x : sample_group(sig, kind, opt.seed + 7, opt.samples)) {
        auto m = group_membership(x);
        const bool ok = kind == GroupKind::Gamma ? m.in_gamma
                        : kind == GroupKind::Gamma_s ? m.in_gamma_s
                        : kind == GroupKind::Pinc ? m.in_pinc
                                                  : m.in_spinc;
        if (!ok) return Outcome::failed({{"group", std::string(to_string(kind))}, {"x", element_to_json(x)}});
      }
    return Outcome::ok();
  });
  r.run("retract", [&] {
    for (const auto& x : sample_group(sig, GroupKind::Gamma, opt.seed + 3, opt.samples)) {
      const auto rx = retract(x);
      const auto n = twisted_norm(rx);
      const double unit = std::abs(std::abs(n.coefficient(0)) - 1.0);
      const double adjoint = relative_max_abs_diff(twisted_adjoint(rx), twisted_adjoint(to_float(x)));
      if (unit > kFloatTolerance || adjoint > kFloatTolerance) return Outcome::failed({{"x", element_to_json(x)}, {"norm_error", unit}, {"adjoint_error", adjoint}});
    }
    return Outcome::ok();
  });
  if (sig.odd()) {
    r.run("odd_isomorphism_roundtrip", [&] {
      for (const auto& x : sample_group(sig, GroupKind::Gamma_s, opt.seed + 5, opt.samples))
        if (!odd_iso_roundtrip(*rep, x)) return Outcome::failed({{"x", element_to_json(x)}});
      return Outcome::ok();
    });
  } else {
    r.run("even_case_adjoint", [&] {
      return even_case_check(*rep, opt.seed + 5, opt.samples) ? Outcome::ok() : Outcome::failed({{"seed", opt.seed + 5}});
    });
  }
}

inline void realify_suite(const Signature& sig, const VerifyOptions&, std::vector<PropertyResult>& out) {
  SuiteRunner r("realify", out);
  const auto rrep = realify_rep(build_irrep(sig, irrep_flavors(sig).front()));
  const auto expected = classify_mod8(sig);
  SchurReport report;
  r.run("schur_label", [&] {
    report = commutant(rrep);
    const bool dim_ok = expected.label == SchurLabel::C ? report.commutant_dim == 2 : report.commutant_dim == 4;
    if (report.label != expected.label || !dim_ok)
      return Outcome::failed({{"commutant_dim", report.commutant_dim}, {"label", std::string(to_string(report.label))}, {"expected", std::string(to_string(expected.label))}});
    return Outcome::ok();
  });
  if (expected.label == SchurLabel::C) {
    r.run("complex_structure_pair", [&] {
      auto pair = complex_structure_pair(rrep);
      const bool ok = report.complex_structures.kind == StructureKind::pair && report.complex_structures.matrices.size() == 2 &&
                      report.complex_structures.matrices[0] == pair.plus && report.complex_structures.matrices[1] == pair.minus;
      return ok ? Outcome::ok() : Outcome::failed({{"kind", std::string(to_string(report.complex_structures.kind))}});
    });
    r.run("fiber_over_pauli", [&] {
      auto f = fiber_check(rrep);
      if (f.ok()) return Outcome::ok();
      return Outcome::failed({{"plus", f.plus_matches_pauli_plus}, {"minus", f.minus_matches_pauli_minus}, {"cross_inconsistent", f.pauli_cross_inconsistent}});
    });
    r.run("pauli_realifications_equivalent", [&] {
      return antilinear_pauli_witness(sig) ? Outcome::ok() : Outcome::failed({{"reason", "no antilinear equivalence"}});
    });
  } else if (expected.label == SchurLabel::H) {
    r.run("quaternion_relations", [&] {
      if (!quaternion_relations(rrep, report.complex_structures)) return Outcome::failed({{"kind", std::string(to_string(report.complex_structures.kind))}});
      const auto& m = report.complex_structures.matrices;
      const QMatrix id = QMatrix::identity(rrep.m());
      for (const auto& [a, b, c] : rational_sphere_points(20)) {
        const QMatrix j = m[0] * a + m[1] * b + m[2] * c;
        if (j * j != -id) return Outcome::failed({{"point", {to_string(a), to_string(b), to_string(c)}}});
      }
      return Outcome::ok();
    });
  }
}

inline void cocycle_suite(const Signature& sig, const VerifyOptions& opt, std::vector<PropertyResult>& out) {
  SuiteRunner r("cocycle", out);
  auto rep = std::make_shared<const MatrixRep>(build_irrep(sig, irrep_flavors(sig).front()));
  const CMatrix seam = sig.dim() >= 2 ? CMatrix(rep->generator(0) * rep->generator(1)) : CMatrix(CMatrix::identity(rep->n()) * GaussianRational(2));
  const CMatrix scale = CMatrix::identity(rep->n()) * GaussianRational(3);
  std::vector<std::pair<std::string, LipschitzCocycle>> demos;
  demos.emplace_back("circle", demo::circle(rep, CMatrix(seam * GaussianRational(3))));
  demos.emplace_back("sphere", demo::sphere(rep, opt.seed));
  demos.emplace_back("torus", demo::torus(rep, seam, scale));
  for (const auto& [name, c] : demos) {
    r.run(name + "_valid", [&] {
      auto v = validate_cocycle(c);
      if (v.valid) return Outcome::ok();
      Json triples = Json::array();
      for (const auto& t : v.failing_triples) triples.push_back({{"triple", t.triple}, {"residual", t.residual}});
      return Outcome::failed({{"issues", v.issues}, {"failing_triples", triples}});
    });
    r.run(name + "_reduce_include", [&] {
      auto reduced = reduce_cocycle(c);
      auto again = reduce_cocycle(include_cocycle(reduced));
      const bool same = reduced.exact() ? transition_identical(again, reduced) : max_transition_distance(again, reduced) <= kRoundoffTolerance;
      if (!validate_cocycle(reduced).valid || !same) return Outcome::failed({{"distance", max_transition_distance(again, reduced)}});
      const double frame = max_transition_distance(frame_projection(reduced), frame_projection(c));
      if (frame > kFloatTolerance) return Outcome::failed({{"frame_distance", frame}});
      return Outcome::ok();
    });
    r.run(name + "_pinor_transitions", [&] {
      auto pinor = associated_pinor_cocycle(include_cocycle(reduce_cocycle(c)));
      auto direct = associated_pinor_cocycle(reduce_cocycle(c));
      if (!transition_identical(pinor, direct)) return Outcome::failed({{"distance", max_transition_distance(pinor, direct)}});
      return Outcome::ok();
    });
    r.run(name + "_clifford_action", [&] {
      auto v = clifford_action_check(c, opt.seed, opt.samples);
      if (v.ok) return Outcome::ok();
      Json fails = Json::array();
      for (const auto& f : v.failures) fails.push_back({{"overlap", {f.overlap.first, f.overlap.second}}, {"residual", f.residual}});
      return Outcome::failed({{"failures", fails}});
    });
    r.run(name + "_monodromy_gauge", [&] {
      for (int s = 0; s < opt.samples; ++s) {
        auto h = random_gauge(c, opt.seed + s);
        for (const auto& [loop, seq] : c.nerve.loops)
          if (!monodromy_gauge_check(c, h, loop).ok()) return Outcome::failed({{"loop", loop}, {"gauge_seed", opt.seed + s}});
      }
      return Outcome::ok();
    });
  }
  r.run("natural_iso_fiber", [&] {
    const auto& c = demos.front().second;
    std::vector<GroupMatrix> us;
    for (const auto& x : sample_group(sig, GroupKind::Gamma, opt.seed + 1, 4)) us.push_back(evaluate(*rep, x));
    for (const auto& x : sample_group(sig, GroupKind::Gamma, opt.seed + 2, opt.samples)) {
      auto check = natural_iso_fiber_check(c, evaluate(*rep, x), us);
      if (!check.ok()) return Outcome::failed({{"q", element_to_json(x)}, {"residual", check.residual}});
    }
    return Outcome::ok();
  });
  const int cls = sig.mod8();
  if (cls == 3 || cls == 7) {
    r.run("volume_structure_orientable", [&] {
      return global_volume_structure(demo::orientable_circle(sig)) ? Outcome::ok() : Outcome::failed({{"reason", "no certificate"}});
    });
    r.run("volume_structure_non_orientable", [&] {
      return global_volume_structure(demo::non_orientable_circle(sig)) ? Outcome::failed({{"reason", "certificate on a det -1 frame"}}) : Outcome::ok();
    });
  }
}

}  // namespace detail

// Runs one named suite, or every suite for "all"; throws std::invalid_argument
// for an unknown suite name.
inline std::vector<PropertyResult> run_suite(const Signature& sig, std::string_view suite, const VerifyOptions& opt) {
  using Fn = void (*)(const Signature&, const VerifyOptions&, std::vector<PropertyResult>&);
  static const std::vector<std::pair<std::string_view, Fn>> table{
      {"algebra", detail::algebra_suite}, {"rep", detail::rep_suite}, {"groups", detail::groups_suite},
      {"realify", detail::realify_suite}, {"cocycle", detail::cocycle_suite}};
  std::vector<PropertyResult> out;
  bool found = false;
  for (const auto& [name, fn] : table)
    if (suite == "all" || suite == name) {
      fn(sig, opt, out);
      found = true;
    }
  if (!found) throw std::invalid_argument("unknown suite: " + std::string(suite));
  return out;
}

inline bool all_passed(const std::vector<PropertyResult>& results) {
  for (const auto& r : results)
    if (r.status == Status::fail) return false;
  return true;
}

inline Json results_to_json(const Signature& sig, const std::vector<PropertyResult>& results) {
  Json props = Json::array();
  for (const auto& r : results) {
    Json p{{"suite", r.suite}, {"name", r.name}, {"status", std::string(to_string(r.status))}, {"runtime_ms", r.runtime_ms}};
    if (r.status != Status::pass) p["witness"] = r.witness;
    props.push_back(std::move(p));
  }
  return {{"sig", signature_to_json(sig)}, {"passed", all_passed(results)}, {"properties", props}};
}

}  // namespace cliffordlab
