#include "giantscatter/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include "giantscatter/errors.hpp"

namespace gs {

namespace {

using Triplet = Eigen::Triplet<cplx>;
using SpMat = Eigen::SparseMatrix<cplx>;
using Solver = Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>;

// Higham's variant of Hager's estimator for ||A^{-1}||_1.
double inverse_norm1(Solver& lu, Solver& lu_adj, Eigen::Index n) {
    Eigen::VectorXcd x = Eigen::VectorXcd::Constant(n, cplx(1.0 / static_cast<double>(n), 0.0));
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        const Eigen::VectorXcd y = lu.solve(x);
        est = y.lpNorm<1>();
        Eigen::VectorXcd xi(n);
        for (Eigen::Index i = 0; i < n; ++i) xi[i] = std::abs(y[i]) > 0 ? y[i] / std::abs(y[i]) : cplx(1.0);
        const Eigen::VectorXcd z = lu_adj.solve(xi);
        Eigen::Index j = 0;
        const double zmax = z.cwiseAbs().maxCoeff(&j);
        if (zmax <= std::real(z.dot(x))) break;
        x.setZero();
        x[j] = 1.0;
    }
    return est;
}

double norm1(const SpMat& A) {
    double best = 0.0;
    for (int c = 0; c < A.outerSize(); ++c) {
        double s = 0.0;
        for (SpMat::InnerIterator it(A, c); it; ++it) s += std::abs(it.value());
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

OracleSystem build_system(const std::vector<std::vector<Leg>>& atoms, double g, double Delta,
                          double Delta_k, const LatticeParams& p, const OracleSettings& s) {
    check_params(p);
    if (s.lead_margin < 100) fail(ErrorKind::SpecError, "lead_margin must be at least 100");

    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    for (const auto& legs : atoms)
        for (const Leg& l : legs) {
            lo = std::min(lo, l.cell);
            hi = std::max(hi, l.cell);
        }
    const int span = atoms.empty() ? 0 : hi - lo;
    const int N = s.cells > 0 ? s.cells : 2 * s.lead_margin + span + 100;
    if (N < 2 * s.lead_margin + span + 4)
        fail(ErrorKind::SpecError, "chain of " + std::to_string(N) + " cells is too short for the coupling span");

    const double E = Delta + Delta_k;
    if (!in_band(E, p)) fail(ErrorKind::OutOfBand, "probe energy " + std::to_string(E) + " outside the band");

    OracleSystem sys;
    sys.cells = N;
    sys.n_atoms = static_cast<int>(atoms.size());
    sys.k = wave_vector_from_detuning(E, p);
    sys.phi = topo_phase(sys.k, p);
    sys.energy = E;
    sys.band_sign = p.sign();
    sys.solver_tol = s.solver_tol;
    sys.max_condition = s.max_condition;
    sys.estimate_condition = s.estimate_condition;
    // centre the coupling region
    sys.shift = atoms.empty() ? 0 : (N - span) / 2 - lo;
    for (const auto& legs : atoms) {
        std::vector<Leg> moved = legs;
        for (Leg& l : moved) l.cell += sys.shift;
        sys.atoms.push_back(moved);
    }

    const double x1 = p.xi1(), x2 = p.xi2();
    const int n = 2 * N + 2 + sys.n_atoms;
    std::vector<Triplet> trip;
    trip.reserve(static_cast<std::size_t>(6 * n));
    sys.b = Eigen::VectorXcd::Zero(n);
    int row = 0;

    auto couple = [&](int r, int cell, Sublattice sub) {
        for (int a = 0; a < sys.n_atoms; ++a)
            for (const Leg& l : sys.atoms[a])
                if (l.cell == cell && l.sub == sub) trip.emplace_back(r, sys.c_index(a), -g);
    };

    // E u_j = -xi1 w_j - xi2 w_{j-1} + g sum(c)
    for (int j = 2; j <= N; ++j, ++row) {
        trip.emplace_back(row, sys.u_index(j), E);
        trip.emplace_back(row, sys.w_index(j), x1);
        trip.emplace_back(row, sys.w_index(j - 1), x2);
        couple(row, j, Sublattice::A);
    }
    // E w_j = -xi1 u_j - xi2 u_{j+1} + g sum(c)
    for (int j = 1; j <= N - 1; ++j, ++row) {
        trip.emplace_back(row, sys.w_index(j), E);
        trip.emplace_back(row, sys.u_index(j), x1);
        trip.emplace_back(row, sys.u_index(j + 1), x2);
        couple(row, j, Sublattice::B);
    }
    // (E - Delta) c = g sum over legs
    for (int a = 0; a < sys.n_atoms; ++a, ++row) {
        trip.emplace_back(row, sys.c_index(a), E - Delta);
        for (const Leg& l : sys.atoms[a])
            trip.emplace_back(row, l.sub == Sublattice::A ? sys.u_index(l.cell) : sys.w_index(l.cell), -g);
    }

    // Boundary rows: incoming plus reflected wave at cell 1, transmitted at cell N.
    const double k = sys.k, phi = sys.phi, sg = sys.band_sign;
    const cplx eik = std::polar(1.0, k);
    trip.emplace_back(row, sys.u_index(1), 1.0);
    trip.emplace_back(row, sys.r_index(), -std::conj(eik));
    sys.b[row++] = eik;
    trip.emplace_back(row, sys.w_index(1), 1.0);
    trip.emplace_back(row, sys.r_index(), -sg * std::polar(1.0, phi - k));
    sys.b[row++] = sg * std::polar(1.0, k - phi);
    trip.emplace_back(row, sys.u_index(N), 1.0);
    trip.emplace_back(row, sys.t_index(), -std::polar(1.0, k * N));
    ++row;
    trip.emplace_back(row, sys.w_index(N), 1.0);
    trip.emplace_back(row, sys.t_index(), -sg * std::polar(1.0, k * N - phi));
    ++row;

    sys.A.resize(n, n);
    sys.A.setFromTriplets(trip.begin(), trip.end());
    sys.A.makeCompressed();
    return sys;
}

OracleSystem build_system(const SingleConfig& cfg, double Delta, double Delta_k, const LatticeParams& p,
                          const OracleSettings& s) {
    check_config(cfg);
    return build_system({{cfg.leg1, cfg.leg2}}, cfg.g, Delta, Delta_k, p, s);
}

OracleSystem build_system(const TwoAtomConfig& cfg, double Delta, double Delta_k, const LatticeParams& p,
                          const OracleSettings& s) {
    check_config(cfg);
    return build_system({{cfg.atom1.leg1, cfg.atom1.leg2}, {cfg.atom2.leg1, cfg.atom2.leg2}}, cfg.g(), Delta,
                        Delta_k, p, s);
}

OracleSolution solve(const OracleSystem& sys) {
    Solver lu;
    lu.compute(sys.A);
    if (lu.info() != Eigen::Success) fail(ErrorKind::SolveFailure, "sparse LU factorization failed");
    const Eigen::VectorXcd x = lu.solve(sys.b);
    if (lu.info() != Eigen::Success) fail(ErrorKind::SolveFailure, "sparse LU solve failed");

    OracleSolution sol;
    sol.residual = (sys.A * x - sys.b).cwiseAbs().maxCoeff();
    if (!(sol.residual < sys.solver_tol))
        fail(ErrorKind::SolveFailure, "row residual " + std::to_string(sol.residual) + " above tolerance");

    if (sys.estimate_condition) {
        Solver lu_adj;
        const SpMat Ah = sys.A.adjoint();
        lu_adj.compute(Ah);
        if (lu_adj.info() != Eigen::Success) fail(ErrorKind::SolveFailure, "adjoint factorization failed");
        sol.condition = norm1(sys.A) * inverse_norm1(lu, lu_adj, sys.A.rows());
        if (sol.condition > sys.max_condition)
            fail(ErrorKind::IllConditioned, "condition estimate " + std::to_string(sol.condition));
    }

    sol.cells = sys.cells;
    sol.shift = sys.shift;
    sol.k = sys.k;
    sol.phi = sys.phi;
    sol.band_sign = sys.band_sign;
    sol.u.resize(static_cast<std::size_t>(sys.cells));
    sol.w.resize(static_cast<std::size_t>(sys.cells));
    for (int j = 1; j <= sys.cells; ++j) {
        sol.u[j - 1] = x[sys.u_index(j)];
        sol.w[j - 1] = x[sys.w_index(j)];
    }
    for (int a = 0; a < sys.n_atoms; ++a) sol.c.push_back(x[sys.c_index(a)]);
    // move the reflection phase back to configuration coordinates
    sol.r = x[sys.r_index()] * std::polar(1.0, -2.0 * sys.k * sys.shift);
    sol.t = x[sys.t_index()];
    sol.flux = std::norm(sol.r) + std::norm(sol.t);
    return sol;
}

PlaneWaveFit plane_wave_fit(const OracleSolution& sol, int j_lo, int j_hi) {
    if (j_lo < 1 || j_hi > sol.cells || j_hi < j_lo)
        fail(ErrorKind::SpecError, "plane-wave fit range outside the chain");
    const int m = j_hi - j_lo + 1;
    Eigen::MatrixXcd M(2 * m, 2);
    Eigen::VectorXcd y(2 * m);
    const double s = sol.band_sign;
    for (int i = 0; i < m; ++i) {
        const int j = j_lo + i;
        const cplx fwd = std::polar(1.0, sol.k * j);
        const cplx bwd = std::conj(fwd);
        M(2 * i, 0) = fwd;
        M(2 * i, 1) = bwd;
        M(2 * i + 1, 0) = s * std::polar(1.0, -sol.phi) * fwd;
        M(2 * i + 1, 1) = s * std::polar(1.0, sol.phi) * bwd;
        y[2 * i] = sol.u[j - 1];
        y[2 * i + 1] = sol.w[j - 1];
    }
    const Eigen::VectorXcd ab = M.colPivHouseholderQr().solve(y);
    PlaneWaveFit f;
    f.A = ab[0];
    f.B = ab[1];
    f.residual = (M * ab - y).cwiseAbs().maxCoeff();
    return f;
}

namespace {

template <class Cfg>
Convergence doubling(const Cfg& cfg, double Delta, double Delta_k, const LatticeParams& p, int cells) {
    OracleSettings s;
    s.cells = cells;
    s.estimate_condition = false;
    Convergence c;
    c.r_small = std::abs(solve(build_system(cfg, Delta, Delta_k, p, s)).r);
    s.cells = 2 * cells;
    c.r_large = std::abs(solve(build_system(cfg, Delta, Delta_k, p, s)).r);
    c.change = std::abs(c.r_large - c.r_small);
    return c;
}

}  // namespace

Convergence doubling_check(const TwoAtomConfig& cfg, double Delta, double Delta_k, const LatticeParams& p,
                           int cells) {
    return doubling(cfg, Delta, Delta_k, p, cells);
}

Convergence doubling_check(const SingleConfig& cfg, double Delta, double Delta_k, const LatticeParams& p,
                           int cells) {
    return doubling(cfg, Delta, Delta_k, p, cells);
}

}  // namespace gs
