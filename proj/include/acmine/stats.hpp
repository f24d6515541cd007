#pragma once

namespace acmine::stats {

double normal_cdf(double x);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
// Absolute accuracy is well below 1e-10 for the parameter ranges used here.
double incomplete_beta(double a, double b, double x);

// P(|T_df| >= |t|) for Student's t.
double student_t_two_sided_p(double t, double df);

// Two-sided tail of Bin(n, p0) at `count` under the normal approximation
// with continuity correction, using the 2*min(lower, upper) convention.
double binomial_normal_two_sided_p(long long count, long long n, double p0);

}  // namespace acmine::stats
