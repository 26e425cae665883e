#include "hmlab/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <memory>

#include "hmlab/core.hpp"

namespace hmlab {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "quadrature needs at least one node");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)), &gsl_integration_glfixed_table_free);
  if (!table) throw Error(ErrorCode::NumericsError, "GSL could not allocate a Gauss-Legendre table");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &rule.nodes[static_cast<std::size_t>(i)],
                                  &rule.weights[static_cast<std::size_t>(i)], table.get());
  return rule;
}

}  // namespace hmlab
