// Decides Circularity, defect-pencil Circularity and rotational invariance
// for the two 4x4 examples, then samples the numerical range of the
// associated partial isometry.

#include <iostream>

#include "kippen/kippen.hpp"

using namespace kippen;

namespace {

void describe(const std::string& name, const Matrix<Gaussian>& C) {
  auto c = make_contraction(C);
  auto rep = circularity_report(c);
  std::cout << name << '\n';
  std::cout << "  P_C = " << p_poly(c) << '\n';
  std::cout << "  Circularity:               " << (rep.has_circularity ? "yes" : "no") << '\n';
  std::cout << "  defect-pencil Circularity: " << (rep.has_defect_pencil_circularity ? "yes" : "no");
  if (rep.defect_pencil_witness)
    std::cout << " (coefficient of " << rep.defect_pencil_witness->first.to_string() << " is "
              << rep.defect_pencil_witness->second << ")";
  std::cout << '\n';
  auto words = unbalanced_trace_scan(c, 8);
  if (words.violation) {
    const auto& w = words.witnesses.front();
    std::cout << "  not rotationally invariant: tr(" << w.word.to_string() << ") = " << w.trace << '\n';
  } else {
    std::cout << "  no unbalanced word up to length 8 has nonzero trace\n";
  }
  auto A = assoc_isometry_numeric(to_eigen(C)).A;
  double worst = 0;
  for (const auto& b : kippenhahn_sample(A, 360)) worst = std::max(worst, origin_circle_deviation(b));
  std::cout << "  largest deviation of an isometry branch from an origin circle: " << worst << "\n\n";
}

}  // namespace

int main() {
  describe("tower example", gallery::tower_c());
  describe("isometry loses Circularity", gallery::p_not_q());
}
