#include "folner/tensor.hpp"

#include <cmath>

#include "folner/diagnostics.hpp"
#include "folner/linalg.hpp"

namespace folner {

namespace {

double hs_squared(const SparseMatrix& m) {
  const double n = schatten_norm(m, Schatten::Two);
  return n * n;
}

}  // namespace

TensorBoundRecord tensor_bound_check(const OperatorSpec& a, const ProjectionSpec& p, const OperatorSpec& b,
                                     const ProjectionSpec& q, std::size_t cap) {
  const auto pad_a = PaddedCompression::of(a, p);
  const auto pad_b = PaddedCompression::of(b, q);
  const std::size_t padded_dim = pad_a.hull.rank() * pad_b.hull.rank();
  if (padded_dim > cap) {
    throw SpecError("Kronecker compression dimension " + std::to_string(padded_dim) + " exceeds cap " +
                    std::to_string(cap));
  }

  TensorBoundRecord rec;
  rec.dim = p.rank() * q.rank();
  rec.padded_dim = padded_dim;

  const auto rank_p = static_cast<double>(p.rank());
  const auto rank_q = static_cast<double>(q.rank());
  const double ra2 = hs_squared(pad_a.off_corner()) / rank_p;
  const double rb2 = hs_squared(pad_b.off_corner()) / rank_q;
  const SparseMatrix dq = indicator(pad_b.matrix.rows(), pad_b.inner);
  const double bq2 = hs_squared(SparseMatrix(pad_b.matrix * dq)) / rank_q;
  const double pap2 = hs_squared(pad_a.corner()) / rank_p;

  rec.ratio_a = std::sqrt(ra2);
  rec.ratio_b = std::sqrt(rb2);
  rec.norm_a = schatten_norm(pad_a.matrix, Schatten::Inf);
  rec.norm_b = schatten_norm(pad_b.matrix, Schatten::Inf);

  const auto joint = PaddedCompression::of(kron_op(a, b), kron_proj(p, q));
  rec.lhs = hs_squared(joint.off_corner()) / static_cast<double>(rec.dim);
  rec.intermediate = ra2 * bq2 + pap2 * rb2;
  rec.rhs = rec.norm_b * rec.norm_b * ra2 + rec.norm_a * rec.norm_a * rb2;
  rec.slack = rec.rhs - rec.lhs;
  rec.intermediate_slack = rec.intermediate - rec.lhs;
  return rec;
}

}  // namespace folner
