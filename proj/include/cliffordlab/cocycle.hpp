#pragma once

#include <array>
#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cliffordlab/errors.hpp"
#include "cliffordlab/groups.hpp"
#include "cliffordlab/realify.hpp"
#include "cliffordlab/rep.hpp"

namespace cliffordlab {

using Edge = std::pair<int, int>;
using Triple = std::array<int, 3>;

// Finite combinatorial cover: patches, ordered overlaps (closed under
// reversal), triple overlaps and named loops for monodromy.
struct Nerve {
  std::vector<int> patches;
  std::vector<Edge> overlaps;
  std::vector<Triple> triples;
  std::map<std::string, std::vector<int>> loops;

  bool has_overlap(int i, int j) const {
    for (const auto& e : overlaps)
      if (e.first == i && e.second == j) return true;
    return false;
  }

  void validate() const {
    std::set<int> ids(patches.begin(), patches.end());
    if (ids.size() != patches.size()) throw MalformedNerve("duplicate patch id");
    std::set<Edge> edges;
    for (const auto& [i, j] : overlaps) {
      if (!ids.count(i) || !ids.count(j)) throw MalformedNerve("overlap references an unknown patch");
      if (i == j) throw MalformedNerve("overlap of a patch with itself");
      edges.emplace(i, j);
    }
    for (const auto& [i, j] : edges)
      if (!edges.count({j, i}))
        throw MalformedNerve("overlap (" + std::to_string(i) + "," + std::to_string(j) + ") has no reverse");
    for (const auto& t : triples)
      for (const auto& [a, b] : {Edge{t[0], t[1]}, Edge{t[1], t[2]}, Edge{t[0], t[2]}})
        if (!edges.count({a, b})) throw MalformedNerve("triple edge (" + std::to_string(a) + "," + std::to_string(b) + ") missing");
    for (const auto& [name, loop] : loops) {
      if (loop.size() < 2 || loop.front() != loop.back()) throw MalformedNerve("loop '" + name + "' is not closed");
      for (std::size_t k = 0; k + 1 < loop.size(); ++k)
        if (!edges.count({loop[k], loop[k + 1]})) throw MalformedNerve("loop '" + name + "' uses a missing overlap");
    }
  }
};

enum class CocycleTag { Lipschitz, Reduced, Frame, PinorTransition };

inline std::string_view to_string(CocycleTag t) {
  switch (t) {
    case CocycleTag::Lipschitz: return "Lipschitz";
    case CocycleTag::Reduced: return "Reduced";
    case CocycleTag::Frame: return "Frame";
    case CocycleTag::PinorTransition: return "PinorTransition";
  }
  return "Lipschitz";
}

inline CocycleTag parse_cocycle_tag(std::string_view text) {
  for (CocycleTag t : {CocycleTag::Lipschitz, CocycleTag::Reduced, CocycleTag::Frame, CocycleTag::PinorTransition})
    if (to_string(t) == text) return t;
  throw std::invalid_argument("unknown cocycle tag: " + std::string(text));
}

// Constant transition data g_ij on every ordered overlap. Frame cocycles
// carry d x d isometry matrices (stored with real complex entries).
struct LipschitzCocycle {
  Nerve nerve;
  std::shared_ptr<const MatrixRep> rep;
  std::map<Edge, GroupMatrix> transitions;
  CocycleTag tag = CocycleTag::Lipschitz;

  const GroupMatrix& at(int i, int j) const {
    auto it = transitions.find({i, j});
    if (it == transitions.end())
      throw std::out_of_range("no transition on overlap (" + std::to_string(i) + "," + std::to_string(j) + ")");
    return it->second;
  }

  bool exact() const {
    for (const auto& [e, g] : transitions)
      if (!is_exact(g)) return false;
    return true;
  }
};

// Adds missing reverse transitions g_ji = g_ij^{-1}.
inline void complete_reverses(LipschitzCocycle& c) {
  std::vector<std::pair<Edge, GroupMatrix>> added;
  for (const auto& [e, g] : c.transitions)
    if (!c.transitions.count({e.second, e.first})) added.emplace_back(Edge{e.second, e.first}, invert(g));
  for (auto& [e, g] : added) c.transitions.emplace(e, std::move(g));
}

struct TripleFailure {
  Triple triple;
  double residual = 0.0;
};

struct CocycleVerdict {
  bool valid = true;
  std::vector<TripleFailure> failing_triples;
  std::vector<std::string> issues;

  void fail(std::string what) {
    valid = false;
    issues.push_back(std::move(what));
  }
};

namespace detail {

inline std::string edge_name(const Edge& e) { return std::to_string(e.first) + "," + std::to_string(e.second); }

inline bool is_frame_matrix(const GroupMatrix& g, const Signature& sig) {
  const QMatrix h = metric_matrix(sig);
  if (const auto* exact = std::get_if<CMatrix>(&g)) {
    auto real = real_part_if_real(*exact);
    return real && real->rows() == h.rows() && real->transpose() * h * *real == h;
  }
  const CMatrixF& f = std::get<CMatrixF>(g);
  if (f.rows() != h.rows()) return false;
  CMatrixF hf = to_float(to_complex(h));
  return max_abs_diff(f.transpose() * hf * f, hf) <= kFloatTolerance;
}

}  // namespace detail

// Checks every invariant of the cocycle; malformed nerves raise MalformedNerve.
inline CocycleVerdict validate_cocycle(const LipschitzCocycle& c) {
  c.nerve.validate();
  CocycleVerdict verdict;
  const Signature& sig = c.rep->sig();
  for (const auto& e : c.nerve.overlaps)
    if (!c.transitions.count(e)) verdict.fail("missing transition on overlap " + detail::edge_name(e));
  if (!verdict.valid) return verdict;
  for (const auto& [e, g] : c.transitions) {
    if (!c.nerve.has_overlap(e.first, e.second)) verdict.fail("transition on unknown overlap " + detail::edge_name(e));
    if (c.tag == CocycleTag::Frame) {
      if (!detail::is_frame_matrix(g, sig)) verdict.fail("frame transition " + detail::edge_name(e) + " is not an isometry");
    } else if (to_float(g).rows() != c.rep->n()) {
      verdict.fail("transition " + detail::edge_name(e) + " has the wrong size");
    }
  }
  if (!verdict.valid) return verdict;
  for (const auto& [e, g] : c.transitions) {
    const GroupMatrix& back = c.at(e.second, e.first);
    const std::size_t size = to_float(g).rows();
    const GroupMatrix id = CMatrix::identity(size);
    if (!group_equal(multiply(g, back), id))
      verdict.fail("g_ji is not the inverse of g_ij on " + detail::edge_name(e));
  }
  for (const auto& t : c.nerve.triples) {
    const GroupMatrix lhs = multiply(c.at(t[0], t[1]), c.at(t[1], t[2]));
    const GroupMatrix& rhs = c.at(t[0], t[2]);
    if (!group_equal(lhs, rhs)) {
      verdict.valid = false;
      verdict.failing_triples.push_back({t, group_distance(lhs, rhs)});
    }
  }
  if (c.tag == CocycleTag::Lipschitz || c.tag == CocycleTag::Reduced || c.tag == CocycleTag::PinorTransition) {
    for (const auto& [e, g] : c.transitions) {
      if (const auto* exact = std::get_if<CMatrix>(&g)) {
        std::optional<LipschitzElement> el;
        try {
          el = lipschitz_member(*exact, c.rep);
        } catch (const NonInvertible&) {
          verdict.fail("transition " + detail::edge_name(e) + " is singular");
          continue;
        }
        if (!el) {
          if (c.tag != CocycleTag::PinorTransition) verdict.fail("transition " + detail::edge_name(e) + " is not a Lipschitz member");
          continue;
        }
        if (c.tag == CocycleTag::Reduced && !(el->norm_value && el->norm_value->norm2() == 1))
          verdict.fail("reduced transition " + detail::edge_name(e) + " does not have unit norm");
      } else {
        auto ad = adjoint_float(*c.rep, std::get<CMatrixF>(g));
        if (ad.residual > kFloatTolerance) verdict.fail("transition " + detail::edge_name(e) + " leaves the generator span");
        if (c.tag == CocycleTag::Reduced) {
          const double modulus = std::pow(std::abs(determinant(std::get<CMatrixF>(g))), 2.0 / static_cast<double>(c.rep->n()));
          if (std::abs(modulus - 1.0) > kFloatTolerance)
            verdict.fail("reduced transition " + detail::edge_name(e) + " does not have unit norm");
        }
      }
    }
  }
  return verdict;
}

// Frame transition Ad_eta(g) of one group matrix.
inline GroupMatrix frame_of(const MatrixRep& rep, const GroupMatrix& g) {
  if (const auto* exact = std::get_if<CMatrix>(&g)) {
    auto el = lipschitz_member(*exact, rep);
    if (!el) throw std::invalid_argument("frame_of: transition has no extracted isometry");
    return to_complex(el->phi0.matrix());
  }
  auto ad = adjoint_float(rep, std::get<CMatrixF>(g));
  if (ad.residual > kFloatTolerance) throw std::invalid_argument("frame_of: transition has no extracted isometry");
  CMatrixF out(ad.matrix.rows(), ad.matrix.cols());
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = ad.matrix(r, c);
  return out;
}

inline LipschitzCocycle frame_projection(const LipschitzCocycle& c) {
  if (c.tag != CocycleTag::Lipschitz && c.tag != CocycleTag::Reduced)
    throw std::invalid_argument("frame_projection requires a Lipschitz or reduced cocycle");
  LipschitzCocycle out{c.nerve, c.rep, {}, CocycleTag::Frame};
  for (const auto& [e, g] : c.transitions) out.transitions.emplace(e, frame_of(*c.rep, g));
  return out;
}

// Pointwise retraction of the transitions onto unit norm.
inline LipschitzCocycle reduce_cocycle(const LipschitzCocycle& c) {
  if (c.tag != CocycleTag::Lipschitz) throw std::invalid_argument("reduce_cocycle requires a Lipschitz cocycle");
  LipschitzCocycle out{c.nerve, c.rep, {}, CocycleTag::Reduced};
  for (const auto& [e, g] : c.transitions) out.transitions.emplace(e, retract_matrix(*c.rep, g));
  return out;
}

inline LipschitzCocycle include_cocycle(const LipschitzCocycle& c) {
  if (c.tag != CocycleTag::Reduced) throw std::invalid_argument("include_cocycle requires a reduced cocycle");
  LipschitzCocycle out = c;
  out.tag = CocycleTag::Lipschitz;
  return out;
}

// Transition data of the associated pinor bundle for the tautological
// representation: the module matrices themselves.
inline LipschitzCocycle associated_pinor_cocycle(const LipschitzCocycle& c) {
  if (c.tag != CocycleTag::Lipschitz && c.tag != CocycleTag::Reduced)
    throw std::invalid_argument("associated_pinor_cocycle requires a Lipschitz or reduced cocycle");
  LipschitzCocycle out = c;
  out.tag = CocycleTag::PinorTransition;
  return out;
}

// Inverse direction: pinor transition data whose matrices are Lipschitz
// members defines a Lipschitz structure.
inline LipschitzCocycle lipschitz_from_pinor(const LipschitzCocycle& c) {
  if (c.tag != CocycleTag::PinorTransition) throw std::invalid_argument("lipschitz_from_pinor requires pinor transition data");
  LipschitzCocycle out = c;
  out.tag = CocycleTag::Lipschitz;
  auto verdict = validate_cocycle(out);
  if (!verdict.valid) throw std::invalid_argument("pinor transitions do not define a Lipschitz structure");
  return out;
}

inline bool transition_identical(const LipschitzCocycle& a, const LipschitzCocycle& b) {
  if (a.transitions.size() != b.transitions.size()) return false;
  for (const auto& [e, g] : a.transitions) {
    auto it = b.transitions.find(e);
    if (it == b.transitions.end() || g.index() != it->second.index()) return false;
    if (is_exact(g) ? std::get<CMatrix>(g) != std::get<CMatrix>(it->second) : std::get<CMatrixF>(g) != std::get<CMatrixF>(it->second))
      return false;
  }
  return true;
}

inline double max_transition_distance(const LipschitzCocycle& a, const LipschitzCocycle& b) {
  double worst = 0.0;
  for (const auto& [e, g] : a.transitions) worst = std::max(worst, group_distance(g, b.at(e.first, e.second)));
  return worst;
}

struct ActionWitness {
  Edge overlap;
  double residual = 0.0;
};

struct ActionVerdict {
  bool ok = true;
  bool exact = true;
  int checked = 0;
  std::vector<ActionWitness> failures;
};

// Representative independence of the fiberwise Clifford action: acting with
// y then transporting by g equals transporting and acting with the
// frame-transformed Cl(Ad(g)^{-1})(y).
inline ActionVerdict clifford_action_check(const LipschitzCocycle& c, std::uint64_t seed, int samples) {
  if (c.tag == CocycleTag::Frame) throw std::invalid_argument("clifford_action_check needs module transitions");
  const MatrixRep& rep = *c.rep;
  const Signature& sig = rep.sig();
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (const auto& [e, g] : c.transitions) edges.push_back(e);
  std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
  std::uniform_int_distribution<Blade> blade(0, sig.blade_count() - 1);
  ActionVerdict verdict;
  for (int s = 0; s < samples && !edges.empty(); ++s) {
    const Edge e = edges[pick(rng)];
    const GroupMatrix& g = c.at(e.first, e.second);
    CliffordElement y(sig);
    for (int t = 0; t < 3; ++t) y.accumulate(blade(rng), GaussianRational(detail::random_rational(rng), detail::random_rational(rng)));
    std::vector<GaussianRational> sv(rep.n());
    for (auto& v : sv) v = GaussianRational(detail::random_rational(rng), detail::random_rational(rng));
    ++verdict.checked;
    if (const auto* exact = std::get_if<CMatrix>(&g)) {
      auto el = lipschitz_member(*exact, c.rep);
      if (!el) {
        verdict.ok = false;
        verdict.failures.push_back({e, -1.0});
        continue;
      }
      const CliffordElement pulled = cl_map(el->phi0.inverse(), y);
      const auto lhs = evaluate(rep, y) * (*exact * sv);
      const auto rhs = *exact * (evaluate(rep, pulled) * sv);
      if (lhs != rhs) {
        verdict.ok = false;
        verdict.failures.push_back({e, 1.0});
      }
    } else {
      verdict.exact = false;
      const CMatrixF& f = std::get<CMatrixF>(g);
      auto ad = adjoint_float(rep, f);
      // float frame inverse via H A^T H
      const int d = sig.dim();
      RMatrixF inv(d, d);
      for (int r = 0; r < d; ++r)
        for (int k = 0; k < d; ++k) inv(r, k) = sig.metric(r) * ad.matrix(k, r) * sig.metric(k);
      CliffordElementF yf = to_float(y);
      CliffordElementF pulled(sig);
      for (const auto& [b, coeff] : yf.terms()) {
        CliffordElementF image = CliffordElementF::one(sig);
        for (int k = 0; k < d; ++k)
          if (b >> k & 1u) {
            std::vector<std::complex<double>> col(d);
            for (int r = 0; r < d; ++r) col[r] = inv(r, k);
            image = image * CliffordElementF::vector(sig, col);
          }
        pulled += image * coeff;
      }
      auto eval_f = [&](const CliffordElementF& x) {
        CMatrixF out(rep.n(), rep.n());
        for (const auto& [b, coeff] : x.terms()) out += to_float(rep.blade_image(b)) * coeff;
        return out;
      };
      std::vector<std::complex<double>> svf;
      for (const auto& v : sv) svf.push_back(v.to_complex());
      auto lhs = eval_f(yf) * (f * svf);
      auto rhs = f * (eval_f(pulled) * svf);
      double residual = 0.0;
      for (std::size_t k = 0; k < lhs.size(); ++k) residual = std::max(residual, std::abs(lhs[k] - rhs[k]));
      if (residual > 1e-7) {
        verdict.ok = false;
        verdict.failures.push_back({e, residual});
      }
    }
  }
  return verdict;
}

// Ordered product g_{l0 l1} g_{l1 l2} ... along a registered loop.
inline GroupMatrix monodromy(const LipschitzCocycle& c, const std::string& loop) {
  auto it = c.nerve.loops.find(loop);
  if (it == c.nerve.loops.end()) throw std::invalid_argument("unregistered loop: " + loop);
  const auto& seq = it->second;
  const std::size_t size = to_float(c.transitions.begin()->second).rows();
  GroupMatrix out = CMatrix::identity(size);
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) out = multiply(out, c.at(seq[k], seq[k + 1]));
  return out;
}

// g_ij -> h_i g_ij h_j^{-1}
inline LipschitzCocycle gauge_transform(const LipschitzCocycle& c, const std::map<int, GroupMatrix>& gauge) {
  LipschitzCocycle out{c.nerve, c.rep, {}, c.tag};
  for (const auto& [e, g] : c.transitions)
    out.transitions.emplace(e, multiply(multiply(gauge.at(e.first), g), invert(gauge.at(e.second))));
  return out;
}

// Power-sum invariants tr(M^k), k = 1..n; they determine the characteristic
// polynomial over a field of characteristic zero.
inline std::vector<GaussianRational> power_traces(const CMatrix& m) {
  std::vector<GaussianRational> out;
  CMatrix power = m;
  for (std::size_t k = 0; k < m.rows(); ++k) {
    out.push_back(trace(power));
    power = power * m;
  }
  return out;
}

struct GaugeCheck {
  bool conjugate = false;
  bool same_characteristic_polynomial = false;
  bool ok() const { return conjugate && same_characteristic_polynomial; }
};

// Monodromy of the gauged cocycle equals h_base M h_base^{-1} and has the
// same characteristic polynomial.
inline GaugeCheck monodromy_gauge_check(const LipschitzCocycle& c, const std::map<int, GroupMatrix>& gauge, const std::string& loop) {
  const GroupMatrix before = monodromy(c, loop);
  const GroupMatrix after = monodromy(gauge_transform(c, gauge), loop);
  const GroupMatrix& h = gauge.at(c.nerve.loops.at(loop).front());
  GaugeCheck out;
  out.conjugate = group_equal(after, multiply(multiply(h, before), invert(h)));
  if (is_exact(before) && is_exact(after)) {
    out.same_characteristic_polynomial = power_traces(std::get<CMatrix>(before)) == power_traces(std::get<CMatrix>(after));
  } else {
    CMatrixF a = to_float(before), b = to_float(after);
    CMatrixF pa = a, pb = b;
    out.same_characteristic_polynomial = true;
    for (std::size_t k = 0; k < a.rows(); ++k) {
      if (std::abs(trace(pa) - trace(pb)) > 1e-7) out.same_characteristic_polynomial = false;
      pa = pa * a;
      pb = pb * b;
    }
  }
  return out;
}

// Random gauge with values in the Lipschitz group of the cocycle's rep.
inline std::map<int, GroupMatrix> random_gauge(const LipschitzCocycle& c, std::uint64_t seed) {
  const Signature& sig = c.rep->sig();
  const GroupKind kind = sig.odd() ? GroupKind::Gamma_s : GroupKind::Gamma;
  auto samples = sample_group(sig, kind, seed, static_cast<int>(c.nerve.patches.size()));
  std::map<int, GroupMatrix> out;
  for (std::size_t k = 0; k < c.nerve.patches.size(); ++k) out.emplace(c.nerve.patches[k], evaluate(*c.rep, samples[k]));
  return out;
}

struct FiberIsoCheck {
  bool r_of_x_is_identity = false;
  bool equivariant = false;
  double residual = 0.0;
  bool ok() const { return r_of_x_is_identity && equivariant; }
};

// With the identity section, q = r(q) x_q; checks r(x_q) = Id and
// x_{qu} = r(u)^{-1} x_q u for the given samples u.
inline FiberIsoCheck natural_iso_fiber_check(const LipschitzCocycle& c, const GroupMatrix& q, const std::vector<GroupMatrix>& us) {
  const MatrixRep& rep = *c.rep;
  if (const auto* exact = std::get_if<CMatrix>(&q))
    if (!lipschitz_member(*exact, c.rep)) throw std::invalid_argument("natural_iso_fiber_check: q is not a Lipschitz member");
  auto x_of = [&](const GroupMatrix& g) { return multiply(invert(retract_matrix(rep, g)), g); };
  FiberIsoCheck out;
  const GroupMatrix xq = x_of(q);
  const GroupMatrix id = CMatrix::identity(rep.n());
  out.residual = group_distance(retract_matrix(rep, xq), id);
  out.r_of_x_is_identity = group_equal(retract_matrix(rep, xq), id);
  out.equivariant = true;
  for (const auto& u : us) {
    const GroupMatrix lhs = x_of(multiply(q, u));
    const GroupMatrix rhs = multiply(multiply(invert(retract_matrix(rep, u)), xq), u);
    out.residual = std::max(out.residual, group_distance(lhs, rhs));
    if (!group_equal(lhs, rhs)) out.equivariant = false;
  }
  return out;
}

// Real pinor transition data on the realified module, with frames.
struct RealPinorCocycle {
  Nerve nerve;
  std::shared_ptr<const RealMatrixRep> rrep;
  std::map<Edge, QMatrix> transitions;
  std::map<Edge, QMatrix> frames;
};

// Frame of a real transition C: coefficients of C G_k C^{-1} in the G_j.
inline std::optional<QMatrix> real_frame(const RealMatrixRep& rrep, const QMatrix& c) {
  auto c_inv = inverse(c);
  if (!c_inv) throw NonInvertible("real_frame: transition is singular");
  const int d = rrep.sig().dim();
  const std::size_t m2 = rrep.m() * rrep.m();
  QMatrix out(d, d);
  for (int k = 0; k < d; ++k) {
    QMatrix target = c * rrep.generator(k) * *c_inv;
    std::vector<SparseRow<Rational>> rows(m2);
    for (int j = 0; j < d; ++j)
      for (std::size_t e = 0; e < m2; ++e)
        if (sgn(rrep.generator(j).data()[e]) != 0) rows[e].emplace_back(j, rrep.generator(j).data()[e]);
    auto sol = solve_sparse(d, std::move(rows), target.data());
    if (!sol) return std::nullopt;
    for (int j = 0; j < d; ++j) out(j, k) = (*sol)[j];
  }
  const QMatrix h = metric_matrix(rrep.sig());
  if (out.transpose() * h * out != h) return std::nullopt;
  return out;
}

inline RealPinorCocycle make_real_pinor_cocycle(Nerve nerve, std::shared_ptr<const RealMatrixRep> rrep, std::map<Edge, QMatrix> transitions) {
  RealPinorCocycle out{std::move(nerve), std::move(rrep), std::move(transitions), {}};
  for (const auto& [e, g] : out.transitions) {
    auto frame = real_frame(*out.rrep, g);
    if (!frame) throw std::invalid_argument("real transition " + detail::edge_name(e) + " does not preserve the generator span");
    out.frames.emplace(e, std::move(*frame));
  }
  return out;
}

inline RealPinorCocycle realify_cocycle(const LipschitzCocycle& c) {
  if (!c.exact()) throw std::invalid_argument("realify_cocycle requires exact transitions");
  auto rrep = std::make_shared<const RealMatrixRep>(realify_rep(*c.rep));
  std::map<Edge, QMatrix> transitions;
  for (const auto& [e, g] : c.transitions) transitions.emplace(e, realify_matrix(std::get<CMatrix>(g)));
  return make_real_pinor_cocycle(c.nerve, std::move(rrep), std::move(transitions));
}

// J = eta(nu) as a global complex structure: returned only when every frame
// transition preserves orientation, certified to commute with every
// transition and to square to -Id.
inline std::optional<QMatrix> global_volume_structure(const RealPinorCocycle& c) {
  const int cls = c.rrep->sig().mod8();
  if (cls != 3 && cls != 7) throw std::invalid_argument("global_volume_structure requires p - q = 3, 7 mod 8");
  for (const auto& [e, frame] : c.frames)
    if (determinant(frame) != 1) return std::nullopt;
  const QMatrix j = c.rrep->volume_image();
  if (j * j != -QMatrix::identity(c.rrep->m())) return std::nullopt;
  for (const auto& [e, g] : c.transitions)
    if (g * j != j * g) return std::nullopt;
  return j;
}

inline std::optional<QMatrix> global_volume_structure(const LipschitzCocycle& c) {
  const int cls = c.rep->sig().mod8();
  if (cls != 3 && cls != 7) throw std::invalid_argument("global_volume_structure requires p - q = 3, 7 mod 8");
  return global_volume_structure(realify_cocycle(c));
}

// Fiber check against sampled Lipschitz elements u.
inline FiberIsoCheck natural_iso_fiber_check(const LipschitzCocycle& c, const GroupMatrix& q, std::uint64_t seed = 0, int samples = 5) {
  const Signature& sig = c.rep->sig();
  std::vector<GroupMatrix> us;
  for (const auto& x : sample_group(sig, sig.odd() ? GroupKind::Gamma_s : GroupKind::Gamma, seed, samples)) us.push_back(evaluate(*c.rep, x));
  return natural_iso_fiber_check(c, q, us);
}

namespace demo {

inline Nerve circle_nerve() {
  Nerve n;
  n.patches = {0, 1, 2};
  n.overlaps = {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 0}, {0, 2}};
  n.loops["main"] = {0, 1, 2, 0};
  return n;
}

// Identity on (0,1) and (1,2), g on (2,0).
inline LipschitzCocycle circle(std::shared_ptr<const MatrixRep> rep, const GroupMatrix& g20) {
  LipschitzCocycle c{circle_nerve(), rep, {}, CocycleTag::Lipschitz};
  const GroupMatrix id = CMatrix::identity(rep->n());
  c.transitions.emplace(Edge{0, 1}, id);
  c.transitions.emplace(Edge{1, 2}, id);
  c.transitions.emplace(Edge{2, 0}, g20);
  complete_reverses(c);
  return c;
}

// Boundary of a tetrahedron with the coboundary cocycle h_i h_j^{-1}.
inline LipschitzCocycle sphere(std::shared_ptr<const MatrixRep> rep, std::uint64_t seed) {
  LipschitzCocycle c{{}, rep, {}, CocycleTag::Lipschitz};
  c.nerve.patches = {0, 1, 2, 3};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) c.nerve.overlaps.emplace_back(i, j);
  c.nerve.triples = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  c.nerve.loops["equator"] = {0, 1, 2, 0};
  c.nerve.loops["meridian"] = {0, 1, 3, 0};
  const Signature& sig = rep->sig();
  auto hs = sample_group(sig, sig.odd() ? GroupKind::Gamma_s : GroupKind::Gamma, seed, 4);
  std::vector<CMatrix> h;
  for (const auto& x : hs) h.push_back(evaluate(*rep, x));
  for (const auto& [i, j] : c.nerve.overlaps) c.transitions.emplace(Edge{i, j}, CMatrix(h[i] * *inverse(h[j])));
  return c;
}

// 3 x 3 grid triangulation of the torus; seam crossings in the two
// directions carry the commuting transitions a and b.
inline LipschitzCocycle torus(std::shared_ptr<const MatrixRep> rep, const CMatrix& a, const CMatrix& b) {
  if (a * b != b * a) throw std::invalid_argument("torus demo needs commuting seam transitions");
  LipschitzCocycle c{{}, rep, {}, CocycleTag::Lipschitz};
  auto id = [](int x, int y) { return 3 * ((x + 3) % 3) + (y + 3) % 3; };
  for (int k = 0; k < 9; ++k) c.nerve.patches.push_back(k);
  const CMatrix a_inv = *inverse(a), b_inv = *inverse(b);
  auto winding = [](int from, int to) { return to - from == -2 ? 1 : (to - from == 2 ? -1 : 0); };
  auto add_edge = [&](int x0, int y0, int x1, int y1) {
    const int i = id(x0, y0), j = id(x1, y1);
    const int x1w = (x1 + 3) % 3, y1w = (y1 + 3) % 3;
    const int wx = winding(x0, x1w), wy = winding(y0, y1w);
    CMatrix g = CMatrix::identity(rep->n());
    if (wx == 1) g = g * a;
    if (wx == -1) g = g * a_inv;
    if (wy == 1) g = g * b;
    if (wy == -1) g = g * b_inv;
    c.nerve.overlaps.emplace_back(i, j);
    c.nerve.overlaps.emplace_back(j, i);
    c.transitions.emplace(Edge{i, j}, g);
    c.transitions.emplace(Edge{j, i}, *inverse(g));
  };
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      add_edge(x, y, x + 1, y);
      add_edge(x, y, x, y + 1);
      add_edge(x, y, x + 1, y + 1);
      c.nerve.triples.push_back({id(x, y), id(x + 1, y), id(x + 1, y + 1)});
      c.nerve.triples.push_back({id(x, y), id(x, y + 1), id(x + 1, y + 1)});
    }
  c.nerve.loops["a"] = {id(0, 0), id(1, 0), id(2, 0), id(0, 0)};
  c.nerve.loops["b"] = {id(0, 0), id(0, 1), id(0, 2), id(0, 0)};
  return c;
}

// Circle on a realified Pauli module (odd dimension) whose (2,0) transition
// anticommutes with every generator: its frame is -id, of determinant -1.
inline RealPinorCocycle non_orientable_circle(const Signature& sig = Signature(3, 0)) {
  if (!sig.odd()) throw std::invalid_argument("non_orientable_circle needs odd dimension");
  auto rrep = std::make_shared<const RealMatrixRep>(realify_rep(build_irrep(sig, Flavor::PauliPlus)));
  std::vector<QMatrix> negated;
  for (const auto& g : rrep->generators()) negated.push_back(-g);
  auto flip = first_invertible(intertwiners(rrep->generators(), negated, rrep->m(), rrep->m()));
  if (!flip) throw std::logic_error("no orientation-reversing transition on the realified module");
  const QMatrix id = QMatrix::identity(rrep->m());
  std::map<Edge, QMatrix> transitions{{{0, 1}, id}, {{1, 0}, id}, {{1, 2}, id}, {{2, 1}, id}, {{2, 0}, *flip}, {{0, 2}, *inverse(*flip)}};
  return make_real_pinor_cocycle(circle_nerve(), std::move(rrep), std::move(transitions));
}

inline RealPinorCocycle orientable_circle(const Signature& sig = Signature(3, 0)) {
  auto rep = std::make_shared<const MatrixRep>(build_irrep(sig, irrep_flavors(sig).front()));
  if (sig.dim() < 2) return realify_cocycle(circle(rep, CMatrix(CMatrix::identity(rep->n()) * GaussianRational(2))));
  return realify_cocycle(circle(rep, CMatrix(rep->generator(0) * rep->generator(1))));
}

}  // namespace demo

}  // namespace cliffordlab
