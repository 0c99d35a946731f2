#pragma once

#include "qmix/microscopic.hpp"
#include "qmix/propagate.hpp"

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>

namespace qmix {

// Fixed float formatting (17 significant digits) so CSV output is
// byte-identical across runs and platforms with IEEE-754 doubles.
std::string format_float(double v);

struct ObservableSelection {
    bool trace = true;
    bool populations = true;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> coherences;  // (row, col) pairs
    bool fidelity_nh = false;
    bool fidelity_lindblad = false;
};

// Trajectory CSV: t, trace, re/im of each requested element, fidelities.
// The reference trajectories for the fidelity columns are computed from the
// same initial state under exp(L_NH t) / exp(L_Lindblad t).
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const ObservableSelection& sel,
                          const Trajectory* nh_reference = nullptr,
                          const Trajectory* lindblad_reference = nullptr);

nlohmann::json trajectory_json(const Trajectory& traj);
nlohmann::json pole_report_json(const PoleReport& report);
nlohmann::json projector_traces_json(const ProjectorTraceReport& rep);
nlohmann::json sweep_json(const SweepResult& sweep);
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceEntry>& table);

}  // namespace qmix
