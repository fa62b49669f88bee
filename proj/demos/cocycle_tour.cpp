#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "cliffordlab/cliffordlab.hpp"

using namespace cliffordlab;

namespace {

// Keeps one direction per overlap; loading fills the reverses back in.
Json forward_only(Json j) {
  Json kept = Json::object();
  for (const auto& [key, m] : j["transitions"].items()) {
    const Edge e = parse_edge_key(key);
    if (!kept.contains(std::to_string(e.second) + "," + std::to_string(e.first))) kept[key] = m;
  }
  j["transitions"] = kept;
  return j;
}

void write(const std::filesystem::path& dir, const std::string& name, const Json& j) {
  std::ofstream(dir / name) << j.dump(2) << '\n';
  std::cout << "wrote " << (dir / name).string() << '\n';
}

void print_matrix(const GroupMatrix& g) {
  for (const auto& row : matrix_to_json(g)) {
    std::cout << "   ";
    for (const auto& e : row) std::cout << ' ' << e.get<std::string>();
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  const Signature sig(3, 0);
  auto rep = std::make_shared<const MatrixRep>(build_irrep(sig, Flavor::PauliPlus));
  const CMatrix e12 = rep->generator(0) * rep->generator(1);
  const GaussianRational phase(Rational(6, 5), Rational(8, 5));

  auto circle = demo::circle(rep, CMatrix(e12 * phase));
  auto sphere = demo::sphere(rep, 1);
  auto torus = demo::torus(rep, e12, CMatrix(CMatrix::identity(2) * GaussianRational(2)));
  auto broken = demo::sphere(std::make_shared<const MatrixRep>(build_irrep(Signature(2, 0), Flavor::Dirac)), 1);
  const CMatrix twist = broken.rep->generator(0) * broken.rep->generator(1);
  broken.transitions[{1, 2}] = twist;
  broken.transitions[{2, 1}] = *inverse(twist);

  if (argc == 3 && std::string(argv[1]) == "--write") {
    const std::filesystem::path dir = argv[2];
    write(dir, "circle_spinc.json", forward_only(cocycle_to_json(circle)));
    write(dir, "sphere.json", cocycle_to_json(sphere));
    write(dir, "torus.json", cocycle_to_json(torus));
    write(dir, "broken_triple.json", cocycle_to_json(broken));
    return 0;
  }

  std::cout << "circle over Cl(3,0), g_20 = (6/5 + 8/5 i) G1 G2\n";
  std::cout << "  valid: " << validate_cocycle(circle).valid << '\n';
  auto reduced = reduce_cocycle(circle);
  std::cout << "  reduced g_20:\n";
  print_matrix(reduced.at(2, 0));
  std::cout << "  frame monodromy:\n";
  print_matrix(monodromy(frame_projection(circle), "main"));

  std::cout << "torus, seam transitions G1 G2 and 2 Id\n";
  for (const auto& loop : {"a", "b"}) {
    std::cout << "  monodromy " << loop << ":\n";
    print_matrix(monodromy(torus, loop));
  }
  const auto gauge = random_gauge(torus, 5);
  std::cout << "  gauge-invariant monodromy: " << monodromy_gauge_check(torus, gauge, "a").ok() << '\n';

  const auto verdict = validate_cocycle(broken);
  std::cout << "broken sphere: valid " << verdict.valid << ", failing triples";
  for (const auto& t : verdict.failing_triples) std::cout << " (" << t.triple[0] << t.triple[1] << t.triple[2] << ")";
  std::cout << '\n';

  std::cout << "volume structure, orientable circle: " << (global_volume_structure(demo::orientable_circle()) ? "certified" : "none") << '\n';
  std::cout << "volume structure, non-orientable circle: " << (global_volume_structure(demo::non_orientable_circle()) ? "certified" : "none") << '\n';
  return 0;
}
