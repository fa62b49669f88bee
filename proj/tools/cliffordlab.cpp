#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cliffordlab/cliffordlab.hpp"

using namespace cliffordlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kComputedCommutantMaxDim = 8;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CLIFFORDLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("CLIFFORDLAB_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

Signature make_signature(int p, int q) {
  try {
    return Signature(p, q);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string obstruction_notes(const Signature& sig) {
  if (sig.odd())
    return "An elementary complex pinor bundle exists iff M carries a Spin^c structure: w1(M) = 0 and w2(M) is the mod 2 "
           "reduction of an integral class. Conditions are stated, not evaluated.";
  return "An elementary complex Lipschitz structure exists iff M carries a Pin^c structure: a U(1)-bundle E with "
         "w2-(M) + w2+(M) + w1-(M)^2 + w1-(M) w1+(M) = w2(E). Conditions are stated, not evaluated.";
}

Json classification(const Signature& sig) {
  const auto table = classify_mod8(sig);
  Json report{{"sig", signature_to_json(sig)},
              {"dims", {{"n", table.n}, {"m", table.m}}},
              {"mod8_class", sig.mod8()},
              {"lipschitz_homotopy_type", sig.odd() ? "Spinc" : "Pinc"},
              {"obstruction_notes", obstruction_notes(sig)}};
  if (sig.odd()) report["sigma"] = *sig.sigma();
  if (sig.dim() <= kComputedCommutantMaxDim) {
    const auto schur = commutant(realify_rep(build_irrep(sig, irrep_flavors(sig).front())));
    report["schur_label"] = std::string(to_string(schur.label));
    report["commutant_dim"] = schur.commutant_dim;
    report["complex_structures_kind"] = std::string(to_string(schur.complex_structures.kind));
    report["real_irreducible"] = schur.label != SchurLabel::ReducibleComposite;
    report["commutant_source"] = "computed";
  } else {
    report["schur_label"] = std::string(to_string(table.label));
    report["commutant_dim"] = table.label == SchurLabel::C ? 2 : 4;
    report["complex_structures_kind"] = table.label == SchurLabel::C ? "pair" : table.label == SchurLabel::H ? "quaternionic" : "none";
    report["real_irreducible"] = table.irreducible_real;
    report["commutant_source"] = "table";
  }
  return report;
}

void print_text(const Json& j, const std::string& indent = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      std::cout << indent << key << ":\n";
      print_text(value, indent + "  ");
    } else {
      std::cout << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
  }
}

int cmd_classify(int p, int q, bool json) {
  const Json report = classification(make_signature(p, q));
  if (json) {
    std::cout << report.dump(2) << '\n';
  } else {
    print_text(report);
  }
  return kExitPass;
}

int cmd_rep(int p, int q, const std::string& flavor_name, bool json) {
  const Signature sig = make_signature(p, q);
  Flavor flavor;
  try {
    flavor = flavor_name.empty() ? irrep_flavors(sig).front() : parse_flavor(flavor_name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  MatrixRep rep = [&] {
    try {
      return build_irrep(sig, flavor);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  const Json out = rep_to_json(rep);
  if (json) {
    std::cout << out.dump(2) << '\n';
    return kExitPass;
  }
  std::cout << to_string(rep.flavor()) << " representation of Cl" << sig.to_string() << ", n = " << rep.n() << '\n';
  for (int k = 0; k < sig.dim(); ++k) {
    std::cout << "G" << k + 1 << ":\n";
    for (const auto& row : out["generators"][k]) {
      std::cout << " ";
      for (const auto& e : row) std::cout << ' ' << e.get<std::string>();
      std::cout << '\n';
    }
  }
  return kExitPass;
}

int cmd_verify(std::optional<int> p, std::optional<int> q, std::optional<int> max_dim, const std::string& suite, const VerifyOptions& opt) {
  if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw UsageError("unknown suite: " + suite);
  std::vector<Signature> sigs;
  if (max_dim) {
    if (p || q) throw UsageError("give either p q or --max-dim");
    if (*max_dim < 1 || *max_dim > Signature::kMaxDim) throw UsageError("--max-dim out of range");
    for (int d = 1; d <= *max_dim; ++d)
      for (int pp = d; pp >= 0; --pp) sigs.emplace_back(pp, d - pp);
  } else {
    if (!p || !q) throw UsageError("verify needs p q or --max-dim");
    sigs.push_back(make_signature(*p, *q));
  }
  Json reports = Json::array();
  bool passed = true;
  for (const auto& sig : sigs) {
    const auto results = run_suite(sig, suite, opt);
    passed = passed && all_passed(results);
    reports.push_back(results_to_json(sig, results));
  }
  const Json out{{"suite", suite}, {"seed", opt.seed}, {"samples", opt.samples}, {"passed", passed}, {"reports", reports}};
  std::cout << out.dump(2) << '\n';
  return passed ? kExitPass : kExitFailure;
}

Json verdict_json(const CocycleVerdict& v) {
  Json triples = Json::array();
  for (const auto& t : v.failing_triples) triples.push_back({{"triple", t.triple}, {"residual", t.residual}});
  return {{"valid", v.valid}, {"issues", v.issues}, {"failing_triples", triples}};
}

int cmd_cocycle(const std::string& file, const std::string& check) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot open " + file);
  LipschitzCocycle c;
  try {
    c = cocycle_from_json(Json::parse(in));
    c.nerve.validate();
  } catch (const std::exception& e) {
    throw UsageError(file + ": " + e.what());
  }
  const auto verdict = validate_cocycle(c);
  Json out{{"file", file}, {"tag", std::string(to_string(c.tag))}, {"validate", verdict_json(verdict)}};
  bool passed = verdict.valid;
  const bool all = check == "all";
  if (verdict.valid && c.tag == CocycleTag::Lipschitz && (all || check == "reduce")) {
    auto reduced = reduce_cocycle(c);
    const auto rv = validate_cocycle(reduced);
    passed = passed && rv.valid;
    out["reduce"] = {{"cocycle", cocycle_to_json(reduced)}, {"validate", verdict_json(rv)}};
  }
  if (verdict.valid && (all || check == "monodromy")) {
    Json loops = Json::object();
    for (const auto& [name, seq] : c.nerve.loops) {
      Json entry{{"module", matrix_to_json(monodromy(c, name))}};
      if (c.tag != CocycleTag::Frame && c.tag != CocycleTag::PinorTransition) entry["frame"] = matrix_to_json(monodromy(frame_projection(c), name));
      loops[name] = std::move(entry);
    }
    out["monodromy"] = loops;
  }
  if (verdict.valid && all && c.tag != CocycleTag::Frame) {
    const auto action = clifford_action_check(c, default_seed(), 10);
    passed = passed && action.ok;
    out["clifford_action"] = {{"ok", action.ok}, {"checked", action.checked}, {"exact", action.exact}};
  }
  out["passed"] = passed;
  std::cout << out.dump(2) << '\n';
  return passed ? kExitPass : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Clifford algebra, representation, group and cocycle toolkit"};
  app.require_subcommand(1);

  int p = 0, q = 0;
  bool json = false;
  auto* classify = app.add_subcommand("classify", "Real structure and homotopy type of Cl(p,q) modules");
  classify->add_option("p", p)->required();
  classify->add_option("q", q)->required();
  classify->add_flag("--json", json, "Emit JSON");

  std::string flavor;
  auto* rep = app.add_subcommand("rep", "Explicit generator matrices of an irreducible module");
  rep->add_option("p", p)->required();
  rep->add_option("q", q)->required();
  rep->add_option("--flavor", flavor, "Dirac, PauliPlus or PauliMinus");
  rep->add_flag("--json", json, "Emit JSON");

  std::optional<int> vp, vq, max_dim;
  std::string suite = "all";
  std::optional<std::uint64_t> seed;
  int samples = 20;
  auto* verify = app.add_subcommand("verify", "Run property suites and print JSON verdicts");
  verify->add_option("p", vp);
  verify->add_option("q", vq);
  verify->add_option("--max-dim", max_dim, "Run every signature with 1 <= p + q <= D");
  verify->add_option("--suite", suite, "algebra, rep, groups, realify, cocycle or all");
  verify->add_option("--seed", seed, "Sampling seed (default: CLIFFORDLAB_SEED or 0)");
  verify->add_option("--samples", samples, "Samples per randomized property")->check(CLI::PositiveNumber);

  std::string file, check = "all";
  auto* cocycle = app.add_subcommand("cocycle", "Validate, reduce and compute monodromy of a cocycle file");
  cocycle->add_option("--file", file)->required();
  cocycle->add_option("--check", check)->check(CLI::IsMember({"all", "validate", "reduce", "monodromy"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*classify) return cmd_classify(p, q, json);
    if (*rep) return cmd_rep(p, q, flavor, json);
    if (*verify) return cmd_verify(vp, vq, max_dim, suite, {seed ? *seed : default_seed(), samples});
    if (*cocycle) return cmd_cocycle(file, check);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
