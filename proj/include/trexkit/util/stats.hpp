#pragma once

#include <cstddef>
#include <vector>

namespace trexkit {

struct MeanWithError {
    double mean = 0.0;
    double std_error = 0.0;  // sample SD / sqrt(count); 0 when count < 2
    std::size_t count = 0;
};

MeanWithError mean_with_error(const std::vector<double>& values);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

// Two-sided p-value for a Student-t statistic with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

}  // namespace trexkit
