#pragma once
// su(2) generators and the level-k space H0 = sum_j V_j* (x) V_j

#include "ncg/linalg.hpp"

#include <array>

namespace ncg {

using Triple = std::array<CMatrix, 3>;

// spin j given as two_j = 2j; standard |j,m> basis, m descending
Triple spin_matrices(int two_j);

struct LevelBlock {
  int two_j;
  Index offset;
  Index size;  // (2j+1)^2
};

struct LevelSpace {
  int k = 0;
  Index dim = 0;
  Triple J, Jbar;  // left and right actions
  std::vector<LevelBlock> blocks;

  double bracket_residual() const;
  double casimir_residual() const;
};

LevelSpace build_level_space(int k);

// dim^2 matrix units E_pq in row-major (p,q) order
std::vector<CMatrix> algebra_basis(const LevelSpace& space);
std::vector<CMatrix> matrix_units(Index n);

}  // namespace ncg
