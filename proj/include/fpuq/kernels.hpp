#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fpuq/bounds.hpp"
#include "fpuq/float_format.hpp"
#include "fpuq/rng.hpp"
#include "fpuq/rounding.hpp"

namespace fpuq {

enum class KernelKind { dot, matvec, matmul, thomas };

/// Column-major dense matrix of reference-precision values.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // data[i + j*rows]

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return data[i + j * rows]; }
  [[nodiscard]] double at(std::size_t i, std::size_t j) const { return data[i + j * rows]; }
};

struct BoundEntry {
  bool valid = false;
  double gamma = 0.0;       // backward-error constant
  double confidence = 0.0;  // union-bound probability for the whole kernel
};

/// Measured errors of one emulated kernel run plus the attached constants.
/// The per-method member confidence is solved from the q-target and the union count,
/// the constants are evaluated at that member confidence with the per-value op count.
struct KernelRun {
  KernelKind kernel = KernelKind::dot;
  FloatFormat fmt;
  double measured_bwd = 0.0;
  double measured_fwd = 0.0;               // relative, 0 when undefined
  BoundEntry dbea, mmibea, vibea;
  std::int64_t op_count_gamma = 0;         // n fed to each gamma
  std::int64_t union_count = 0;            // k fed to Q
  double member_zeta = 0.0;
  double q_target = 0.0;
  std::optional<double> forward_condition; // (|a|^T|b|)/|a^T b| for dot
  std::int64_t excluded_rows = 0;          // zero Oettli-Prager denominators

  [[nodiscard]] const BoundEntry& entry(BoundMethod m) const;
};

/// Recursive left-to-right emulated dot product; returns the computed value and the
/// error report. Inputs must already be representable in fmt.
std::pair<double, KernelRun> dot_emulated(std::span<const double> a,
                                          std::span<const double> b,
                                          const FloatFormat& fmt, double q_target = 0.99,
                                          CBound c_bound = CBound::paper);

/// Same recursion with sampled model errors (U[-u,u] per multiply/add, first add
/// exact) in reference precision; used for the model-vs-true EDF comparisons.
double dot_model_value(std::span<const double> a, std::span<const double> b, double u,
                       CounterRng& rng);

/// Emulated y = A x, one dot per row; componentwise Oettli-Prager backward error.
std::pair<std::vector<double>, KernelRun> matvec_emulated(const Matrix& A,
                                                          std::span<const double> x,
                                                          const FloatFormat& fmt,
                                                          double q_target = 0.99,
                                                          CBound c_bound = CBound::paper);

/// Emulated C = A B, column by column.
std::pair<Matrix, KernelRun> matmul_emulated(const Matrix& A, const Matrix& B,
                                             const FloatFormat& fmt, double q_target = 0.99,
                                             CBound c_bound = CBound::paper);

}  // namespace fpuq
