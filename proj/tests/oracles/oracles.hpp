#pragma once

// Hand-derived values and frozen regression baselines shared by the unit and
// acceptance tests. Derived values come from direct arithmetic, noted inline.

#include <cmath>
#include <numbers>
#include <string>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// {q1 = 1, q-2 = 2i}: norm_1^2 = 1 + 4 * 4, Lambda = 1 - 2 * 4
inline const double sobolev_two_mode_s1 = std::sqrt(17.0);
inline constexpr double lambda_two_mode = -7.0;

// {q1 = 1}: Lambda = 1, G = |q1|^4 / (4 pi)
inline const double hamiltonian_unit_mode = 1.0 + 1.0 / (4 * pi);

// G coefficients: |q1|^4 -> 1/(4 pi); q1 q2 conj(q1) conj(q2) -> 4 orderings / (4 pi)
inline constexpr long G_single_num = 1, G_single_den = 4;
inline constexpr long G_pair_num = 1, G_pair_den = 1;

// {Lambda, q3 conj(q1) q2 conj(q4)} = i (9 - 1 + 4 - 16) m
inline constexpr long lambda_eigen_3124 = -4;

// (3,1,2,4): divisor 9 - 1 + 4 - 16, bound sqrt(4)^3 / (2 sqrt(3 * 2 * 1))
inline constexpr long divisor_3124 = -4;
inline const double bound_3124 = 8.0 / (2.0 * std::sqrt(6.0));

// F on the canonical monomial q2 q3 conj(q1) conj(q4): four orderings of i / (4 pi (-4))
inline constexpr long F4_2314_im_num = -1, F4_2314_im_den = 4;

// K kernel at (j,k) = (2,1): -(2*2 - 1) / (8 (2 - 1)^2)
inline constexpr long K_21_num = -3, K_21_den = 8;

// tau(2,1,3) = (2 - 1 + 3) / ((2 - 1)(3 - 1))
inline constexpr long tau_213 = 2;

// (5,4,2,3,1,1): 25 - 16 + 4 - 9 + 1 - 1; 5^3 / (100 (4*3*2*1*1)^2) = 125/57600
inline constexpr long sextuple_divisor_542311 = 4;
inline constexpr long sextuple_bound_num = 5, sextuple_bound_den = 2304;

// Omega_1(1,2,5,3,6,7) = 1 - 8 + 125 - 27 + 216 - 343; rhs 3 * 6^3 * 7 * 6 * 5
inline constexpr long omega_125367 = -36;
inline constexpr long omega_rhs_125367 = 136080;

// mu(1,2,5) = 1 / ((1-2)(5-2))
inline constexpr long mu_125_num = -1, mu_125_den = 3;

// x = (1,-3,2): N = 14, X = -6, e2 = -7, sum x^4 = 98, sum x^3 = -18
inline constexpr long centered_N = 14, centered_X = -6;

// plane wave u = A e^{i(kx - w t)}: w = k^2 + |A|^2 k
inline double plane_wave_frequency(int k, double a) { return double(k) * k + a * a * k; }

// Brute force over multisets of nonzero integers (see test_identities.cpp): pairs
// with equal sums and square sums, disjoint, one class per symmetry orbit.
inline constexpr std::size_t triple_pairs_bound7 = 43;
inline constexpr std::size_t triple_pairs_bound10 = 141;
inline constexpr std::size_t triple_pairs_positive6 = 2;  // {1,4,4}/{2,2,5}, {2,5,5}/{3,3,6}

// Resonant non-normal sextic monomials in the box.
inline constexpr std::size_t resonant_M6 = 50;
inline constexpr std::size_t resonant_M7 = 92;
inline constexpr std::size_t resonant_M8 = 156;
inline constexpr std::size_t resonant_M10 = 358;

// Regression baselines at M = 8, frozen from the exact construction.
inline constexpr std::size_t R6_terms_M8 = 18916;
inline constexpr std::size_t K_terms_M8 = 232;
inline constexpr std::size_t F6_terms_M8 = 18684;
inline constexpr double audit_B_M8 = 0.282094791774;   // 1/(2 sqrt(pi))
inline constexpr double audit_F_M8 = 0.103374167892;
inline constexpr double audit_R6_M8 = 0.199295164553;
inline constexpr double audit_F6_M8 = 0.00719797304098;
inline constexpr std::size_t qtilde0_box_terms_M8 = 6720;

// Residual ladder, probe seed 7, M = 8, dt 0.25, tolerance 1e-12.
inline constexpr double residual_order4_lambda_quarter = 9.024223121e-08;
inline constexpr double residual_order6_lambda_quarter = 1.224935821e-09;

inline std::string golden(const std::string& name) { return std::string(NFLAB_ORACLE_DIR) + "/golden/" + name; }

}  // namespace oracle
