#pragma once

#include <cstddef>

#include "folner/operator.hpp"
#include "folner/projection.hpp"

namespace folner {

inline constexpr std::size_t kDefaultKronDimensionCap = 4096;

/// Both sides of the tensor-product Følner bound
///   ||(1 - P⊗Q)(A⊗B)(P⊗Q)||_2^2 / ||P⊗Q||_2^2
///     = r_A^2 ||BQ||_2^2/||Q||_2^2 + ||PAP||_2^2/||P||_2^2 r_B^2   (intermediate)
///    <= ||B||^2 r_A^2 + ||A||^2 r_B^2                                (rhs)
/// with r_X the Hilbert-Schmidt off-corner ratio of a factor. ||A||, ||B|| are
/// operator norms of the padded factor compressions, which never exceed the
/// true norms.
struct TensorBoundRecord {
  double lhs = 0.0;
  double intermediate = 0.0;
  double rhs = 0.0;
  double slack = 0.0;               // rhs - lhs
  double intermediate_slack = 0.0;  // intermediate - lhs
  double ratio_a = 0.0;             // r_A
  double ratio_b = 0.0;             // r_B
  double norm_a = 0.0;
  double norm_b = 0.0;
  std::size_t dim = 0;  // rank of P⊗Q
  std::size_t padded_dim = 0;
  bool norms_from_padded_compression = true;
};

/// Throws SpecError if the padded Kronecker compression exceeds `cap`.
TensorBoundRecord tensor_bound_check(const OperatorSpec& a, const ProjectionSpec& p, const OperatorSpec& b,
                                     const ProjectionSpec& q, std::size_t cap = kDefaultKronDimensionCap);

}  // namespace folner
