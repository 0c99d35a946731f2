#pragma once

#include "qmix/propagate.hpp"

namespace qmix {

// Uniform discretization of one ancillary continuum: k_count energies
// spanning [-half_bandwidth, half_bandwidth].
struct ContinuumSpec {
    int k_count = 64;
    double half_bandwidth = 0.0;

    double spacing() const { return 2.0 * half_bandwidth / double(k_count - 1); }
    // Poincare horizon of the discretized band; reduced dynamics beyond it
    // is dominated by the artificial revival.
    double recurrence_time() const { return 2.0 * std::numbers::pi / spacing(); }
};

// Picks half_bandwidth = 20 x the largest scale in the model.
ContinuumSpec default_continuum(const SystemModel& base, int k_count = 64);

struct MicroscopicModel {
    SystemModel base;
    std::vector<ContinuumSpec> continua;   // one per channel, in channel order
    Matrix full_hamiltonian;               // (N + sum K) x (N + sum K)
    // Lindblad jumps sqrt(Gamma_c) |target><k|, stored as index pairs.
    std::vector<std::pair<Eigen::Index, Eigen::Index>> jumps;

    Eigen::Index full_dim() const { return full_hamiltonian.rows(); }
};

// Replaces each elementary jump sqrt(gamma)|b><a| by Hamiltonian couplings
// V = sqrt(gamma d_omega / 2pi) from |a> into a dedicated continuum and
// incoherent returns sqrt(Gamma_c)|b><k|. Throws UnsupportedChannelError
// for non-elementary channels.
MicroscopicModel build_microscopic(const SystemModel& base, const ContinuumSpec& spec);

struct MicroscopicOptions {
    double dt = 0.0;              // integrator step; 0 derives one from the spectral range
    double liouville_cap = 1e4;   // refuse full Liouville dimensions above this
    bool warn_recurrence = true;
};

struct MicroscopicRun {
    Trajectory reduced;                 // N x N states, projection onto the discrete block
    std::vector<double> full_trace;     // trace of the full density matrix
    double recurrence_time = 0.0;
    bool horizon_exceeded = false;      // end time ran past the recurrence horizon
};

// Propagates the full Lindblad model and projects onto the discrete block.
// rho0 must be supported on the discrete partition.
MicroscopicRun run_microscopic(const MicroscopicModel& micro, const Matrix& rho0,
                               std::span<const double> times,
                               const MicroscopicOptions& opt = {});

struct ConvergenceEntry {
    int k = 0;
    double w = 0.0;
    double sup_error = 0.0;    // sup-norm of rho deviation vs the spectral propagator
    double trace_error = 0.0;  // sup deviation of the reduced trace
    std::string error;         // nonempty if the cell failed
};

// Deviation from the closed-form spectral propagator per (K, W) cell.
std::vector<ConvergenceEntry> convergence_study(const SystemModel& base, const Matrix& rho0,
                                                std::span<const double> times,
                                                std::span<const int> k_values,
                                                std::span<const double> w_values,
                                                const MicroscopicOptions& opt = {});

}  // namespace qmix
