#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "giantscatter/coupling.hpp"
#include "giantscatter/lattice.hpp"

namespace gs {

// Brute-force stationary solve on a finite chain. Shares nothing with the
// closed forms beyond the Bloch vectors used in the four boundary rows.
struct OracleSettings {
    int cells = 0;             // 0 picks 2 * lead_margin + span + 100
    int lead_margin = 150;     // free cells between each chain end and the nearest leg
    double solver_tol = 1e-10; // max row residual accepted
    double max_condition = 1e12;
    bool estimate_condition = true;
};

struct OracleSystem {
    Eigen::SparseMatrix<cplx> A;
    Eigen::VectorXcd b;
    int cells = 0;
    int shift = 0;  // chain cell = configuration cell + shift
    int n_atoms = 0;
    double k = 0;
    double phi = 0;
    double energy = 0;
    int band_sign = 1;
    std::vector<std::vector<Leg>> atoms;  // legs in chain cells
    double solver_tol = 1e-10;
    double max_condition = 1e12;
    bool estimate_condition = true;

    // column layout
    int u_index(int j) const { return 2 * (j - 1); }
    int w_index(int j) const { return 2 * (j - 1) + 1; }
    int r_index() const { return 2 * cells; }
    int t_index() const { return 2 * cells + 1; }
    int c_index(int a) const { return 2 * cells + 2 + a; }
};

struct OracleSolution {
    cplx r;  // in configuration coordinates, comparable with the closed forms
    cplx t;
    std::vector<cplx> u;  // u[j-1], w[j-1] for chain cells j = 1..cells
    std::vector<cplx> w;
    std::vector<cplx> c;  // one amplitude per atom
    double residual = 0;
    double flux = 0;       // |r|^2 + |t|^2
    double condition = 0;  // 1-norm estimate, 0 when not computed
    int cells = 0;
    int shift = 0;
    double k = 0;
    double phi = 0;
    int band_sign = 1;
};

// atoms: legs per atom in configuration cells. Energy is Delta + Delta_k.
OracleSystem build_system(const std::vector<std::vector<Leg>>& atoms, double g, double Delta,
                          double Delta_k, const LatticeParams& p, const OracleSettings& s = {});
OracleSystem build_system(const SingleConfig& cfg, double Delta, double Delta_k, const LatticeParams& p,
                          const OracleSettings& s = {});
OracleSystem build_system(const TwoAtomConfig& cfg, double Delta, double Delta_k, const LatticeParams& p,
                          const OracleSettings& s = {});

OracleSolution solve(const OracleSystem& sys);

// Least-squares fit of A e^{ikj} + B e^{-ikj} (with the matching Bloch w
// component) over chain cells [j_lo, j_hi].
struct PlaneWaveFit {
    cplx A;
    cplx B;
    double residual = 0;
};
PlaneWaveFit plane_wave_fit(const OracleSolution& sol, int j_lo, int j_hi);

// Solves at N and 2N cells and reports the change in |r|.
struct Convergence {
    double r_small = 0;
    double r_large = 0;
    double change = 0;
};
Convergence doubling_check(const TwoAtomConfig& cfg, double Delta, double Delta_k, const LatticeParams& p,
                           int cells);
Convergence doubling_check(const SingleConfig& cfg, double Delta, double Delta_k, const LatticeParams& p,
                           int cells);

}  // namespace gs
