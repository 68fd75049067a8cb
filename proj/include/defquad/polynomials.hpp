#ifndef DEFQUAD_POLYNOMIALS_HPP
#define DEFQUAD_POLYNOMIALS_HPP

#include <optional>
#include <vector>

#include "defquad/deformation.hpp"

namespace defquad {

// J_0(x)..J_N(x) at one abscissa. If magnitude monitoring tripped, values
// stops early and overflow_at holds the first untrustworthy order.
struct PolynomialEvaluation {
  DeformationSpec spec;
  double x = 0.0;
  std::vector<double> values;
  std::optional<int> overflow_at;
};

// Forward recurrence J_{n+1} = ( (2x/sqrt(1+Q)) J_n - sqrt([n]) J_{n-1} ) / sqrt([n+1]).
PolynomialEvaluation eval_all(const DeformationSpec& spec, double x, int order);

// One PolynomialEvaluation per abscissa; grid must be strictly increasing.
std::vector<PolynomialEvaluation> eval_grid(const DeformationSpec& spec,
                                            const std::vector<double>& grid, int order);

// Classical references, independent of eval_all.
double hermite_oracle(int n, double x);      // H_n(x), physicists'
double chebyshev_u_oracle(int n, double x);  // U_n(x)

// Direct closed forms for the degree-2 and degree-3 polynomials.
double j2_closed_form(const DeformationSpec& spec, double x);
double j3_closed_form(const DeformationSpec& spec, double x);

}  // namespace defquad

#endif
