#include "folner/projection.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>

namespace folner {

Lattice Lattice::product(const Lattice& left, const Lattice& right) {
  Lattice out(Kind::Product);
  out.left_ = std::make_shared<const Lattice>(left);
  out.right_ = std::make_shared<const Lattice>(right);
  return out;
}

const Lattice& Lattice::left() const {
  if (!is_product()) throw SpecError("lattice " + to_string() + " has no tensor factors");
  return *left_;
}

const Lattice& Lattice::right() const {
  if (!is_product()) throw SpecError("lattice " + to_string() + " has no tensor factors");
  return *right_;
}

std::string Lattice::to_string() const {
  switch (kind_) {
    case Kind::N0:
      return "n0";
    case Kind::Z:
      return "z";
    case Kind::Product:
      return "(" + left_->to_string() + " x " + right_->to_string() + ")";
  }
  return "?";
}

bool operator==(const Lattice& a, const Lattice& b) {
  if (a.kind_ != b.kind_) return false;
  if (!a.is_product()) return true;
  return *a.left_ == *b.left_ && *a.right_ == *b.right_;
}

ProjectionSpec ProjectionSpec::window(const Lattice& lattice, long lo, long hi) {
  if (lattice.is_product()) throw SpecError("window projections live on N0 or Z; use kron for products");
  if (hi < lo) throw SpecError("window [" + std::to_string(lo) + ", " + std::to_string(hi) + "] has rank zero");
  if (lattice.kind() == Lattice::Kind::N0 && lo < 0) throw SpecError("window on n0 starts below 0");
  ProjectionSpec p(Kind::Window, lattice);
  p.lo_ = lo;
  p.hi_ = hi;
  std::vector<long> sites(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < sites.size(); ++i) sites[i] = lo + static_cast<long>(i);
  p.rank_ = sites.size();
  p.sites_ = std::make_shared<const std::vector<long>>(std::move(sites));
  return p;
}

ProjectionSpec ProjectionSpec::index_set(const Lattice& lattice, std::vector<long> sites) {
  if (lattice.is_product()) throw SpecError("index-set projections live on N0 or Z; use kron for products");
  if (sites.empty()) throw SpecError("index set is empty (rank zero projection)");
  for (std::size_t i = 1; i < sites.size(); ++i) {
    if (sites[i] <= sites[i - 1]) throw SpecError("index set entries must be strictly increasing");
  }
  if (lattice.kind() == Lattice::Kind::N0 && sites.front() < 0) throw SpecError("index set on n0 has a negative site");
  ProjectionSpec p(Kind::IndexSet, lattice);
  p.rank_ = sites.size();
  p.lo_ = sites.front();
  p.hi_ = sites.back();
  p.sites_ = std::make_shared<const std::vector<long>>(std::move(sites));
  return p;
}

ProjectionSpec ProjectionSpec::kron(const ProjectionSpec& left, const ProjectionSpec& right) {
  ProjectionSpec p(Kind::Kron, Lattice::product(left.lattice(), right.lattice()));
  p.rank_ = left.rank() * right.rank();
  p.left_ = std::make_shared<const ProjectionSpec>(left);
  p.right_ = std::make_shared<const ProjectionSpec>(right);
  return p;
}

double ProjectionSpec::hs_norm() const { return std::sqrt(static_cast<double>(rank_)); }

const std::vector<long>& ProjectionSpec::sites() const {
  if (kind_ == Kind::Kron) throw SpecError("product projection has no flat site list");
  return *sites_;
}

const ProjectionSpec& ProjectionSpec::left() const {
  if (kind_ != Kind::Kron) throw SpecError("projection is not a tensor product");
  return *left_;
}

const ProjectionSpec& ProjectionSpec::right() const {
  if (kind_ != Kind::Kron) throw SpecError("projection is not a tensor product");
  return *right_;
}

std::vector<std::vector<long>> ProjectionSpec::enumerate() const {
  std::vector<std::vector<long>> out;
  if (kind_ != Kind::Kron) {
    out.reserve(rank_);
    for (long s : *sites_) out.push_back({s});
    return out;
  }
  const auto lhs = left_->enumerate();
  const auto rhs = right_->enumerate();
  out.reserve(rank_);
  for (const auto& a : lhs) {
    for (const auto& b : rhs) {
      std::vector<long> idx = a;
      idx.insert(idx.end(), b.begin(), b.end());
      out.push_back(std::move(idx));
    }
  }
  return out;
}

bool ProjectionSpec::contains(const ProjectionSpec& other) const {
  if (!(lattice_ == other.lattice_)) return false;
  if (kind_ == Kind::Kron) return left_->contains(*other.left_) && right_->contains(*other.right_);
  return std::includes(sites_->begin(), sites_->end(), other.sites_->begin(), other.sites_->end());
}

bool operator==(const ProjectionSpec& a, const ProjectionSpec& b) {
  if (!(a.lattice_ == b.lattice_)) return false;
  if (a.lattice_.is_product()) return *a.left_ == *b.left_ && *a.right_ == *b.right_;
  return *a.sites_ == *b.sites_;
}

namespace {

ProjectionSpec from_sites(const Lattice& lattice, std::vector<long> sites) {
  if (!sites.empty() && sites.back() - sites.front() + 1 == static_cast<long>(sites.size())) {
    return ProjectionSpec::window(lattice, sites.front(), sites.back());
  }
  return ProjectionSpec::index_set(lattice, std::move(sites));
}

void require_same_lattice(const ProjectionSpec& a, const ProjectionSpec& b) {
  if (!(a.lattice() == b.lattice())) {
    throw SpecError("lattice mismatch: " + a.lattice().to_string() + " vs " + b.lattice().to_string());
  }
}

}  // namespace

ProjectionSpec union_hull(const ProjectionSpec& a, const ProjectionSpec& b) {
  require_same_lattice(a, b);
  if (a.lattice().is_product()) {
    return ProjectionSpec::kron(union_hull(a.left(), b.left()), union_hull(a.right(), b.right()));
  }
  std::vector<long> merged;
  merged.reserve(a.rank() + b.rank());
  std::set_union(a.sites().begin(), a.sites().end(), b.sites().begin(), b.sites().end(),
                 std::back_inserter(merged));
  return from_sites(a.lattice(), std::move(merged));
}

ProjectionSpec dilate(const ProjectionSpec& a, long radius) {
  if (a.lattice().is_product()) throw SpecError("dilate is defined on base lattices only");
  if (radius <= 0) return a;
  const long floor = a.lattice().kind() == Lattice::Kind::N0 ? 0 : std::numeric_limits<long>::min();
  std::vector<long> out;
  out.reserve(a.rank() + 2 * static_cast<std::size_t>(radius));
  long next = std::numeric_limits<long>::min();
  for (long s : a.sites()) {
    const long from = std::max({s - radius, floor, next});
    for (long t = from; t <= s + radius; ++t) out.push_back(t);
    next = std::max(next, s + radius + 1);
  }
  return from_sites(a.lattice(), std::move(out));
}

std::vector<long> positions_in(const ProjectionSpec& inner, const ProjectionSpec& outer) {
  require_same_lattice(inner, outer);
  if (inner.lattice().is_product()) {
    const auto lp = positions_in(inner.left(), outer.left());
    const auto rp = positions_in(inner.right(), outer.right());
    const auto stride = static_cast<long>(outer.right().rank());
    std::vector<long> out;
    out.reserve(lp.size() * rp.size());
    for (long i : lp)
      for (long j : rp) out.push_back(i * stride + j);
    return out;
  }
  const auto& big = outer.sites();
  std::vector<long> out;
  out.reserve(inner.rank());
  auto it = big.begin();
  for (long s : inner.sites()) {
    it = std::lower_bound(it, big.end(), s);
    if (it == big.end() || *it != s) {
      throw SpecError("site " + std::to_string(s) + " is outside the enclosing projection");
    }
    out.push_back(static_cast<long>(it - big.begin()));
  }
  return out;
}

ProjectionSpec section_window(const Lattice& lattice, long n) {
  switch (lattice.kind()) {
    case Lattice::Kind::N0:
      return ProjectionSpec::window(lattice, 0, n);
    case Lattice::Kind::Z:
      return ProjectionSpec::window(lattice, -n, n);
    case Lattice::Kind::Product:
      return ProjectionSpec::kron(section_window(lattice.left(), n), section_window(lattice.right(), n));
  }
  throw SpecError("unknown lattice");
}

ProjectionSequence finite_section_sequence(const Lattice& lattice, std::span<const long> n_list) {
  if (n_list.empty()) throw SpecError("finite_section_sequence: empty n list");
  ProjectionSequence seq;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] <= 0) throw SpecError("finite_section_sequence: n values must be positive");
    if (i > 0 && n_list[i] <= n_list[i - 1]) {
      throw SpecError("finite_section_sequence: n values must be strictly increasing");
    }
    seq.n_values.push_back(n_list[i]);
    seq.projections.push_back(section_window(lattice, n_list[i]));
  }
  seq.increasing = true;
  seq.exhaustive = true;
  return seq;
}

ProjectionSpec kron_proj(const ProjectionSpec& p, const ProjectionSpec& q) { return ProjectionSpec::kron(p, q); }

}  // namespace folner
