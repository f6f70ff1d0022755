#pragma once
// CAR operators, gamma matrices, gradings and charge conjugation

#include "ncg/linalg.hpp"

namespace ncg {

struct FermionAlgebra {
  Index n_modes = 0;
  Index dim = 0;
  std::vector<CMatrix> a, adag;  // exact CAR, {a_i, a_j*} = delta_ij
  RMatrix g;                     // metric g_AB
  RMatrix g_inv;
  std::vector<CMatrix> c, cdag;  // metric-raised: {c^A, c^B*} = g^AB

  CMatrix number() const;
  double car_residual() const;     // exact CAR on a
  double raised_residual() const;  // {c^A, c^B*} = g^AB, {c,c} = 0
};

FermionAlgebra build_fermion_algebra(const RMatrix& g);

struct GammaPair {
  std::vector<CMatrix> gamma, gamma_bar;  // {g,g} = -2 g^AB
  std::vector<CMatrix> psi, psi_bar;      // psi = -i gamma, psi_bar = i gamma_bar
};

GammaPair gamma_pair(const FermionAlgebra& alg);
double clifford_residual(const FermionAlgebra& alg, const GammaPair& gp);

enum class VolumeKind {
  both_copies,  // grading from psi and psi_bar (three modes)
  single_copy,  // 2-d grading sigma = (i/2) sqrt(g) eps gamma gamma (two modes)
  hodge         // (1/n!) sqrt(g) eps (c + c*)...(c + c*)
};

CMatrix grading_volume(const FermionAlgebra& alg, VolumeKind which);

// 2-d sigma from explicit gammas and metric
CMatrix volume_2d(const std::vector<CMatrix>& gammas, const RMatrix& g);

// C with C gamma = -conj(gamma) C, C = C* = C^-1
CMatrix charge_conjugation(const std::vector<CMatrix>& gammas_2d, double tol = 1e-10);

// levi-civita symbol on n indices
double levi_civita(const std::vector<int>& idx);

}  // namespace ncg
