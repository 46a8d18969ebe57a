#include "trexkit/conic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SparseCholesky>

namespace trexkit::conic {

namespace {

constexpr double kTauFloor = 1e-12;
constexpr double kRayFloor = 1e-12;

// Row/column equilibration of A with rows of each second-order cone block
// sharing one scale factor, so the scaled cone product is the same product.
struct Scaling {
    Eigen::VectorXd row;   // D
    Eigen::VectorXd col;   // E
    double b_scale = 1.0;  // sigma_b
    double c_scale = 1.0;  // sigma_c
};

void uniformize_soc_blocks(const ConeSpec& cones, Eigen::VectorXd& row_norms) {
    Eigen::Index at = cones.zero_dim + cones.nonneg_dim;
    for (const auto d : cones.soc_dims) {
        const double block_max = row_norms.segment(at, d).maxCoeff();
        row_norms.segment(at, d).setConstant(block_max);
        at += d;
    }
}

Scaling equilibrate(Eigen::SparseMatrix<double>& A, const ConeSpec& cones,
                    int passes) {
    const Eigen::Index m = A.rows();
    const Eigen::Index n = A.cols();
    Scaling sc;
    sc.row = Eigen::VectorXd::Ones(m);
    sc.col = Eigen::VectorXd::Ones(n);

    Eigen::VectorXd row_norms(m), col_norms(n);
    for (int pass = 0; pass < passes; ++pass) {
        row_norms.setZero();
        col_norms.setZero();
        for (int k = 0; k < A.outerSize(); ++k) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
                const double a = std::abs(it.value());
                row_norms(it.row()) = std::max(row_norms(it.row()), a);
                col_norms(it.col()) = std::max(col_norms(it.col()), a);
            }
        }
        uniformize_soc_blocks(cones, row_norms);
        auto step = [](double norm) {
            return norm > 1e-12 ? 1.0 / std::sqrt(norm) : 1.0;
        };
        const Eigen::VectorXd dr = row_norms.unaryExpr(step);
        const Eigen::VectorXd dc = col_norms.unaryExpr(step);
        for (int k = 0; k < A.outerSize(); ++k) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
                it.valueRef() *= dr(it.row()) * dc(it.col());
            }
        }
        sc.row.array() *= dr.array();
        sc.col.array() *= dc.array();
    }
    return sc;
}

double norm_scale(double norm) {
    if (norm <= 1e-12) return 1.0;
    return std::clamp(1.0 / norm, 1e-6, 1e6);
}

}  // namespace

const char* to_string(Status status) {
    switch (status) {
        case Status::optimal: return "optimal";
        case Status::infeasible: return "infeasible";
        case Status::unbounded: return "unbounded";
        case Status::max_iterations: return "max_iterations";
        case Status::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

ConicSolution solve(const ConicProblem& problem, const SolverSettings& settings,
                    const std::optional<WarmStart>& warm) {
    {
        const Diagnostics diag = validate(problem);
        if (!diag.ok()) {
            std::string msg = "invalid cone program:";
            for (const auto& d : diag.defects) msg += " " + d + ";";
            throw std::invalid_argument(msg);
        }
    }
    const Eigen::Index m = problem.num_rows();
    const Eigen::Index n = problem.num_vars();

    Eigen::SparseMatrix<double> As = problem.A;
    Scaling sc;
    if (settings.scaling) {
        sc = equilibrate(As, problem.cones, settings.scaling_passes);
    } else {
        sc.row = Eigen::VectorXd::Ones(m);
        sc.col = Eigen::VectorXd::Ones(n);
    }
    const Eigen::VectorXd bs0 = sc.row.cwiseProduct(problem.b);
    const Eigen::VectorXd cs0 = sc.col.cwiseProduct(problem.c);
    sc.b_scale = norm_scale(bs0.norm());
    sc.c_scale = norm_scale(cs0.norm());
    const Eigen::VectorXd bs = sc.b_scale * bs0;
    const Eigen::VectorXd cs = sc.c_scale * cs0;

    // Factor I + A'A once; the rank-one (c;b) update is handled by a
    // Sherman-Morrison correction around this factorization.
    Eigen::SparseMatrix<double> gram(n, n);
    {
        Eigen::SparseMatrix<double> identity(n, n);
        identity.setIdentity();
        gram = identity;
        gram += Eigen::SparseMatrix<double>(As.transpose() * As);
    }
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
    llt.compute(gram);
    ConicSolution out;
    if (llt.info() != Eigen::Success) {
        out.status = Status::numerical_failure;
        out.x = Eigen::VectorXd::Zero(n);
        out.y = Eigen::VectorXd::Zero(m);
        out.slack = Eigen::VectorXd::Zero(m);
        return out;
    }
    auto solve_pair = [&](const Eigen::VectorXd& gx, const Eigen::VectorXd& gy,
                          Eigen::VectorXd& zx, Eigen::VectorXd& zy) {
        zx = llt.solve(gx - As.transpose() * gy);
        zy = gy + As * zx;
    };
    Eigen::VectorXd mh_x, mh_y;
    solve_pair(cs, bs, mh_x, mh_y);
    const double sherman_denom = 1.0 + cs.dot(mh_x) + bs.dot(mh_y);

    // Iterates of the splitting on the self-dual embedding: u = (x, y, tau),
    // v = (0, s, kappa) once the cone projection has been applied.
    Eigen::VectorXd ux(n), uy(m), vx(n), vy(m);
    double ut = 1.0, vt = 1.0;
    if (warm) {
        if (warm->x.size() != n || warm->y.size() != m || warm->slack.size() != m) {
            throw std::invalid_argument("warm start dimensions do not match the problem");
        }
        ux = sc.b_scale * warm->x.cwiseQuotient(sc.col);
        uy = sc.c_scale * warm->y.cwiseQuotient(sc.row);
        vy = sc.b_scale * sc.row.cwiseProduct(warm->slack);
        vx.setZero();
        ut = 1.0;
        vt = 0.0;
    } else {
        ux.setZero();
        uy.setZero();
        vx.setZero();
        vy.setZero();
    }

    const double alpha = settings.over_relaxation;
    Eigen::VectorXd wx(n), wy(m), zx(n), zy(m), tx(n), ty(m);
    double wt = 0.0, zt = 0.0, tt = 0.0;

    auto unscale_candidate = [&](double tau) {
        Candidate cand;
        cand.x = ux.cwiseProduct(sc.col) / (tau * sc.b_scale);
        cand.y = uy.cwiseProduct(sc.row) / (tau * sc.c_scale);
        cand.slack = vy.cwiseQuotient(sc.row) / (tau * sc.b_scale);
        return cand;
    };
    auto fill_solution = [&](Status status, int iterations) {
        out.status = status;
        out.iterations = iterations;
        const double tau = ut;
        if (tau > kTauFloor) {
            Candidate cand = unscale_candidate(tau);
            const Residuals res = residuals(problem, cand);
            out.x = std::move(cand.x);
            out.y = std::move(cand.y);
            out.slack = std::move(cand.slack);
            out.primal_residual = res.primal;
            out.dual_residual = res.dual;
            out.duality_gap = res.gap;
        } else {
            out.x = Eigen::VectorXd::Zero(n);
            out.y = Eigen::VectorXd::Zero(m);
            out.slack = Eigen::VectorXd::Zero(m);
        }
    };

    const double c_norm = problem.c.norm();
    const double b_norm = problem.b.norm();

    for (int iter = 1; iter <= settings.max_iterations; ++iter) {
        // Linear step: solve (I + Q) u_tilde = u + v via the reduced system.
        wx = ux + vx;
        wy = uy + vy;
        wt = ut + vt;
        solve_pair(wx - wt * cs, wy - wt * bs, zx, zy);
        const double corr = (cs.dot(zx) + bs.dot(zy)) / sherman_denom;
        zx -= corr * mh_x;
        zy -= corr * mh_y;
        zt = wt + cs.dot(zx) + bs.dot(zy);

        // Over-relaxed cone projection, then the dual update.
        tx = alpha * zx + (1.0 - alpha) * ux - vx;
        ty = alpha * zy + (1.0 - alpha) * uy - vy;
        tt = alpha * zt + (1.0 - alpha) * ut - vt;
        ux = tx;  // x block lives in the free cone
        uy = ty;
        project_onto_dual_cone(problem.cones, uy);
        ut = std::max(tt, 0.0);
        vx = ux - tx;
        vy = uy - ty;
        vt = ut - tt;

        const bool due = (iter % settings.check_interval == 0) ||
                         iter == settings.max_iterations;
        if (!due) continue;

        if (!ux.allFinite() || !uy.allFinite() || !vy.allFinite() ||
            !std::isfinite(ut) || !std::isfinite(vt)) {
            out.status = Status::numerical_failure;
            out.iterations = iter;
            out.x = Eigen::VectorXd::Zero(n);
            out.y = Eigen::VectorXd::Zero(m);
            out.slack = Eigen::VectorXd::Zero(m);
            return out;
        }

        if (ut > kTauFloor) {
            Candidate cand = unscale_candidate(ut);
            const Residuals res = residuals(problem, cand);
            if (res.primal <= settings.eps && res.dual <= settings.eps &&
                res.gap <= settings.eps) {
                out.status = Status::optimal;
                out.iterations = iter;
                out.x = std::move(cand.x);
                out.y = std::move(cand.y);
                out.slack = std::move(cand.slack);
                out.primal_residual = res.primal;
                out.dual_residual = res.dual;
                out.duality_gap = res.gap;
                return out;
            }
        }

        // Certificates. An unbounded ray x with c'x < 0 and A x + s ~ 0;
        // an infeasibility certificate y in K* with A'y ~ 0 and b'y < 0.
        if (c_norm > 0.0) {
            const Eigen::VectorXd ray_x = ux.cwiseProduct(sc.col);
            const double cobj = problem.c.dot(ray_x);
            if (cobj < -kRayFloor) {
                const Eigen::VectorXd ray_s = vy.cwiseQuotient(sc.row);
                const double infeas = (problem.A * ray_x + ray_s).norm();
                if (infeas * c_norm / (-cobj) <= settings.eps) {
                    out.status = Status::unbounded;
                    out.iterations = iter;
                    out.x = ray_x / (-cobj);
                    out.slack = ray_s / (-cobj);
                    out.y = Eigen::VectorXd::Zero(m);
                    return out;
                }
            }
        }
        if (b_norm > 0.0) {
            const Eigen::VectorXd ray_y = uy.cwiseProduct(sc.row);
            const double bobj = problem.b.dot(ray_y);
            if (bobj < -kRayFloor) {
                const double infeas = (problem.A.transpose() * ray_y).norm();
                if (infeas * b_norm / (-bobj) <= settings.eps) {
                    out.status = Status::infeasible;
                    out.iterations = iter;
                    out.y = ray_y / (-bobj);
                    out.x = Eigen::VectorXd::Zero(n);
                    out.slack = Eigen::VectorXd::Zero(m);
                    return out;
                }
            }
        }
    }

    fill_solution(Status::max_iterations, settings.max_iterations);
    return out;
}

}  // namespace trexkit::conic
