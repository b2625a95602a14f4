#pragma once

#include <vector>

namespace oscillax {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1,1], ascending
  std::vector<double> w;
};

// Gauss-Legendre rule with n nodes. Rules are computed once and cached.
const GaussRule& gauss_legendre(int n);

}  // namespace oscillax
