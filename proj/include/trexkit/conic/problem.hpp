#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "trexkit/conic/cones.hpp"

namespace trexkit::conic {

// Cone program in standard form:
//   minimize    c'x
//   subject to  Ax + s = b,  s in K
// with dual
//   maximize    -b'y
//   subject to  A'y + c = 0,  y in K*.
struct ConicProblem {
    Eigen::VectorXd c;
    Eigen::SparseMatrix<double> A;
    Eigen::VectorXd b;
    ConeSpec cones;

    Eigen::Index num_vars() const { return c.size(); }
    Eigen::Index num_rows() const { return b.size(); }
};

struct Diagnostics {
    std::vector<std::string> defects;
    bool ok() const { return defects.empty(); }
};

// Structural checks: dimension agreement between c, A, b and the cone spec,
// no empty cone blocks, all data finite. Returns every defect found.
Diagnostics validate(const ConicProblem& problem);

struct Residuals {
    double primal = 0.0;  // ||Ax + s - b|| / (1 + ||b||)
    double dual = 0.0;    // ||A'y + c|| / (1 + ||c||)
    double gap = 0.0;     // |c'x + b'y| / (1 + |c'x| + |b'y|)
};

struct Candidate {
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    Eigen::VectorXd slack;
};

// Normalized KKT residuals of a candidate triple, computed directly from the
// problem data. Throws std::invalid_argument on dimension mismatch.
Residuals residuals(const ConicProblem& problem, const Candidate& candidate);

}  // namespace trexkit::conic
