// Builds the [2/1] solution with nodes 1..4, verifies the Hirota residuals,
// certifies nonflatness, and restricts it to the leaf x4 = 0.
#include <iostream>

#include "hirota/hirota.hpp"
#include "hirota/transforms.hpp"
#include "hirota/veronese.hpp"

int main() {
  using namespace hirota;
  WebSpec spec = WebSpec::standard(2, 1);
  HirotaSolution sol = build_solution(spec);
  std::cout << "P_2 = " << to_string(sol.pk) << "\n";
  std::cout << "Q_1 = " << to_string(sol.ql) << "\n";

  HirotaVerdict verdict = verify_hirota(sol);
  std::cout << "residuals vanish on " << verdict.triples.size() << " triples: " << (verdict.verified ? "yes" : "no") << "\n";

  FlatnessVerdict flat = flatness_check(spec);
  std::cout << "web: " << to_string(flat.status) << "\n";

  RationalFunction leaf = restrict(sol, 3, Rational(0));
  std::vector<MultiPoly> nodes;
  for (const auto& v : restricted_nodes(spec, 3)) nodes.push_back(MultiPoly::constant(3, v));
  std::cout << "on x4 = 0: f = " << to_string(leaf) << ", residual vanishes: "
            << (verify_hirota(leaf, nodes).verified ? "yes" : "no") << "\n";
  return verdict.verified ? 0 : 1;
}
