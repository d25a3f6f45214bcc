#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "folner/common.hpp"

namespace folner {

/// Index lattice an operator acts on: l2(N0), l2(Z) or a tensor product.
class Lattice {
 public:
  enum class Kind { N0, Z, Product };

  static Lattice n0() { return Lattice(Kind::N0); }
  static Lattice z() { return Lattice(Kind::Z); }
  static Lattice product(const Lattice& left, const Lattice& right);

  Kind kind() const { return kind_; }
  bool is_product() const { return kind_ == Kind::Product; }
  const Lattice& left() const;
  const Lattice& right() const;

  std::string to_string() const;
  friend bool operator==(const Lattice& a, const Lattice& b);

 private:
  explicit Lattice(Kind k) : kind_(k) {}
  Kind kind_;
  std::shared_ptr<const Lattice> left_;
  std::shared_ptr<const Lattice> right_;
};

/// A non-zero finite-rank coordinate projection: a window or finite index
/// set on N0/Z, or the tensor product of two such projections.
class ProjectionSpec {
 public:
  enum class Kind { Window, IndexSet, Kron };

  static ProjectionSpec window(const Lattice& lattice, long lo, long hi);
  static ProjectionSpec index_set(const Lattice& lattice, std::vector<long> sites);
  static ProjectionSpec kron(const ProjectionSpec& left, const ProjectionSpec& right);

  Kind kind() const { return kind_; }
  const Lattice& lattice() const { return lattice_; }
  std::size_t rank() const { return rank_; }
  /// ||P||_2 = sqrt(rank).
  double hs_norm() const;
  /// ||P||_1 = rank.
  double trace_norm() const { return static_cast<double>(rank_); }

  /// Ascending sites of a Window/IndexSet projection.
  const std::vector<long>& sites() const;
  const ProjectionSpec& left() const;
  const ProjectionSpec& right() const;

  /// Window bounds; only meaningful for Kind::Window.
  long lo() const { return lo_; }
  long hi() const { return hi_; }

  /// Every site as a multi-index, row-major for products.
  std::vector<std::vector<long>> enumerate() const;

  /// True if every site of `other` is a site of this projection.
  bool contains(const ProjectionSpec& other) const;

  friend bool operator==(const ProjectionSpec& a, const ProjectionSpec& b);

 private:
  ProjectionSpec(Kind k, Lattice lattice) : kind_(k), lattice_(std::move(lattice)) {}

  Kind kind_;
  Lattice lattice_;
  std::size_t rank_ = 0;
  long lo_ = 0;
  long hi_ = -1;
  std::shared_ptr<const std::vector<long>> sites_;
  std::shared_ptr<const ProjectionSpec> left_;
  std::shared_ptr<const ProjectionSpec> right_;
};

/// Smallest projection of the same shape containing both (set union on a
/// base lattice, componentwise union for products).
ProjectionSpec union_hull(const ProjectionSpec& a, const ProjectionSpec& b);

/// Sites of `a` grown by `radius` in both directions, clipped to the lattice.
/// Only defined for base lattices.
ProjectionSpec dilate(const ProjectionSpec& a, long radius);

/// Position of each site of `inner` within the enumeration of `outer`.
/// Throws SpecError if `inner` is not contained in `outer`.
std::vector<long> positions_in(const ProjectionSpec& inner, const ProjectionSpec& outer);

/// Candidate Følner sequence: one projection per n.
struct ProjectionSequence {
  std::vector<long> n_values;
  std::vector<ProjectionSpec> projections;
  bool increasing = false;
  bool exhaustive = false;

  bool proper() const { return increasing && exhaustive; }
  std::size_t size() const { return projections.size(); }
};

/// Windows {0..n} on N0, {-n..n} on Z, and products of those on product
/// lattices. `n_list` must be non-empty, positive and strictly increasing.
ProjectionSequence finite_section_sequence(const Lattice& lattice, std::span<const long> n_list);

ProjectionSpec kron_proj(const ProjectionSpec& p, const ProjectionSpec& q);

/// Default finite section window for a lattice at level n.
ProjectionSpec section_window(const Lattice& lattice, long n);

}  // namespace folner
