#pragma once

#include "qmix/spectral.hpp"

#include <map>
#include <span>
#include <string>

namespace qmix {

// U_mixed(t) = sum_i X_i exp(lambda_i t). The sum runs over every pole;
// removed poles carry vanishing projectors so they contribute nothing,
// and keeping them makes U(0) = I hold by completeness.
Matrix evolution_operator(const SpectralDecomposition& dec, double t);

struct Trajectory {
    std::vector<double> times;
    std::vector<Matrix> states;
    std::vector<double> trace;

    Eigen::Index dim() const { return states.empty() ? 0 : states.front().rows(); }
};

// Propagates rho0 over the time grid; every state is Hermitized (exact in
// exact arithmetic) and validated against the density-matrix invariants.
Trajectory propagate(const SpectralDecomposition& dec, const Matrix& rho0,
                     std::span<const double> times);

// rho / Tr(rho); a trace below kTolNorm raises VanishedTraceError.
Matrix normalized_state(const Matrix& rho);

// Normalized fidelity Tr sqrt(sqrt(rho_ref) rho sqrt(rho_ref)) / sqrt(Tr rho_ref Tr rho).
double fidelity(const Matrix& rho, const Matrix& rho_ref);

struct ProjectorTraceReport {
    std::vector<Complex> per_pole;   // t_i = Tr(X_i rho0), all poles
    double t0 = 0.0;                 // weight of the steady pole(s), |lambda| < steady_tol
    double t_rest = 0.0;             // sum over the remaining non-removed poles
    bool has_steady = false;
};

ProjectorTraceReport projector_traces(const SpectralDecomposition& dec, const Matrix& rho0);

// || U(t+tau) - U(t) U(tau) ||_F, the non-Markovianity witness.
double semigroup_defect(const SpectralDecomposition& dec, double t, double tau);

struct SweepRow {
    double gamma_c = 0.0;
    Vector eigenvalues;   // sorted by (Re, Im); no continuity tracking
    double t0 = 0.0;
    double t_rest = 0.0;
    std::vector<double> trace;   // trace curve on the sweep time grid
    std::string error;           // nonempty if this point failed
};

struct SweepResult {
    std::vector<double> times;
    std::vector<SweepRow> rows;  // sorted by gamma_c
};

// One decomposition + trajectory per Gamma_c; per-point failures are
// recorded and the sweep continues. jobs <= 0 means hardware concurrency.
SweepResult gamma_c_sweep(const SystemModel& base, std::span<const double> gamma_cs,
                          const Matrix& rho0, std::span<const double> times, int jobs = 0);

// Decomposition for a model at its own gamma_c, short-circuiting to the
// direct non-Hermitian generator when gamma_c = 0.
SpectralDecomposition decompose_model(const SystemModel& model);

std::vector<double> linear_grid(double start, double stop, int count);

}  // namespace qmix
