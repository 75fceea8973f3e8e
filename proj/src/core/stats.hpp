#pragma once

namespace bcos {

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation, absolute accuracy around 1e-14.
double incomplete_beta(double a, double b, double x);

// Two-tailed tail probability of Student's t with dof degrees of freedom:
// P(|T| >= |t|) = I_{dof/(dof+t^2)}(dof/2, 1/2).
double t_two_tailed_p(double t, int dof);

}  // namespace bcos
