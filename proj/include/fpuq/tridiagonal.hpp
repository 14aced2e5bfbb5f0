#pragma once

#include <span>
#include <vector>

#include "fpuq/kernels.hpp"

namespace fpuq {

/// Tridiagonal matrix: sub[i] = A(i+1, i), diag[i] = A(i, i), sup[i] = A(i, i+1)
/// (zero-based storage of the paper's alpha_{i>=2}, beta_i, nu_{i<=n-1}).
struct TriDiagonal {
  std::vector<double> sub;   // length n-1
  std::vector<double> diag;  // length n
  std::vector<double> sup;   // length n-1

  [[nodiscard]] std::size_t order() const { return diag.size(); }
  void validate() const;

  /// Componentwise |A| y for the Oettli-Prager denominators.
  [[nodiscard]] std::vector<double> abs_times(std::span<const double> y) const;
};

/// Doolittle factors of a tridiagonal matrix: unit lower diagonal with l_i, upper
/// diagonal u_i, shared superdiagonal nu_i.
struct LUFactors {
  std::vector<double> sub_l;   // length n-1
  std::vector<double> diag_u;  // length n
  std::vector<double> sup;     // copy of the source superdiagonal

  [[nodiscard]] std::size_t order() const { return diag_u.size(); }

  /// Componentwise |L||U| y (|L||U| is itself tridiagonal).
  [[nodiscard]] std::vector<double> abs_lu_times(std::span<const double> y) const;
};

/// l_i = fl(alpha_i / u_{i-1}), u_i = fl(beta_i - fl(l_i nu_{i-1})); u_1 = beta_1.
LUFactors thomas_factor(const TriDiagonal& A, const FloatFormat& fmt);

/// y_1 = b_1; y_i = fl((b_i - fl(l_i y_{i-1}))).
std::vector<double> thomas_forward(const LUFactors& lu, std::span<const double> b,
                                   const FloatFormat& fmt);

/// x_n = fl(y_n / u_n); x_i = fl(fl(y_i - fl(nu_i x_{i+1})) / u_i).
std::vector<double> thomas_backward(const LUFactors& lu, std::span<const double> y,
                                    const FloatFormat& fmt);

/// Reference-precision solve (factor + forward + backward in doubles).
std::vector<double> thomas_solve_reference(const TriDiagonal& A, std::span<const double> b);

struct ThomasBoundEntry {
  bool valid = false;
  double gamma_ls = 0.0;     // combined constant
  double confidence = 0.0;   // Q(zeta, 7n-6); 1 for the deterministic method
  double forward_bound = 0.0;  // gamma_ls * C_LS (relative infinity-norm bound)
};

struct ThomasRun {
  KernelRun base;                   // measured errors + per-method combined constants
  ThomasBoundEntry dbea, mmibea, vibea;
  double c_ls = 0.0;                // ||  |A^-1| (|L||U||x|) ||_inf / ||x||_inf
  double c_ls_abs = 0.0;            // ||  |A^-1| (|L||U||x|) ||_inf
  double norm1_x_hat = 0.0;
  LUFactors factors;                // the emulated factors used by the run

  [[nodiscard]] const ThomasBoundEntry& entry(BoundMethod m) const;
};

/// Full emulated Thomas solve with measured backward error
/// max_i |A x_hat - b|_i / (|L||U||x_hat|)_i, the relative forward error against a
/// reference-precision solve, and the combined constants (2*g1 + g2 + g1*g2 for the
/// probabilistic methods, g1 + g2 + g1*g2 for the deterministic one) at the member
/// confidence solved from Q(zeta, 7n-6) = q_target.
std::pair<std::vector<double>, ThomasRun> thomas_solve(const TriDiagonal& A,
                                                       std::span<const double> b,
                                                       const FloatFormat& fmt,
                                                       double q_target = 0.99,
                                                       CBound c_bound = CBound::paper);

}  // namespace fpuq
