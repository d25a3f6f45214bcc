#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "folner/linalg.hpp"
#include "folner/operator.hpp"
#include "folner/projection.hpp"

namespace folner {

struct LabeledOperator {
  std::string label;
  OperatorSpec op;
};

/// Compression of an operator to the coupling hull J of a projection P,
/// together with the positions of P's sites inside J. Every nonzero entry
/// of AP and PA lies in the J x J block.
struct PaddedCompression {
  ProjectionSpec hull;
  SparseMatrix matrix;
  std::vector<long> inner;

  static PaddedCompression of(const OperatorSpec& op, const ProjectionSpec& p);

  /// [P, A] = PA - AP on the hull.
  SparseMatrix commutator() const;
  /// (1 - P) A P on the hull.
  SparseMatrix off_corner() const;
  /// P A (1 - P) on the hull.
  SparseMatrix off_corner_adjoint_side() const;
  /// P A P on the hull.
  SparseMatrix corner() const;
};

/// ||AP - PA||_p / ||P||_p for p in {1, 2}.
double folner_ratio(const OperatorSpec& op, const ProjectionSpec& p, Schatten norm);
/// ||(1 - P) A P||_p / ||P||_p for p in {1, 2}.
double off_corner_ratio(const OperatorSpec& op, const ProjectionSpec& p, Schatten norm);
/// Operator norm of [P, A].
double qd_gap(const OperatorSpec& op, const ProjectionSpec& p);

struct FolnerRow {
  std::string label;
  long n = 0;
  std::size_t dim = 0;
  Schatten p = Schatten::Two;
  double ratio = 0.0;
  double off_corner = 0.0;
  double qd_gap = 0.0;
};

/// Least-squares slope of log(ratio) against log(d_n); empty when fewer than
/// two nonzero ratios remain.
struct DecayFit {
  std::string label;
  Schatten p = Schatten::Two;
  std::optional<double> slope;
  std::size_t points = 0;
};

struct FolnerReport {
  std::vector<FolnerRow> rows;
  std::vector<DecayFit> fits;
};

/// Unweighted least-squares slope of log y against log x over the pairs with
/// y > 0.
std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y);

FolnerReport folner_profile(std::span<const LabeledOperator> ops, const ProjectionSequence& seq,
                            std::span<const Schatten> norms);

}  // namespace folner
