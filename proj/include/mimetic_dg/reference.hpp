#ifndef MIMETIC_DG_REFERENCE_HPP_
#define MIMETIC_DG_REFERENCE_HPP_

#include <vector>

#include "mimetic_dg/euler.hpp"

namespace mdg::reference {

/// Lagrange basis derivatives at a point that is not an LGL node, from the
/// product rule l_j'(x) = l_j(x) sum_{k != j} 1/(x - x_k). Does not touch the
/// collocation differentiation matrix.
std::vector<double> lagrange_derivatives_product_rule(const QuadRule1D& rule, double x);

/**
 * Serial weak-form evaluation of the DGSEM right-hand side.
 *
 * The volume term integral of I^N(F~^s) dl_i/dxi_s along direction s is
 * computed with an (N+1)-point Gauss rule, which is exact; transverse
 * directions and the mass matrix use the collocated LGL rule. Summation by
 * parts makes this equal to the strong form computed by DgsemOperator.
 */
EulerState dgsem_rhs_weak(const EulerState& u, const Mesh3D& mesh,
                          const std::vector<MetricSet>& metrics, double gamma = 1.4);

}  // namespace mdg::reference

#endif  // MIMETIC_DG_REFERENCE_HPP_
