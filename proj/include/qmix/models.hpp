#pragma once

#include "qmix/types.hpp"

#include <array>
#include <optional>

namespace qmix {

struct TwoLevelParams {
    double delta_e = 0.0;
    double v_eg = 0.0;
    double gamma = 0.0;        // decay rate, plain units (F = sqrt(gamma)|g><e|)
    double gamma_pump = 0.0;   // incoherent pump rate (F = sqrt(gamma')|e><g|)
    double gamma_z = 0.0;      // dephasing rate (F = sqrt(gamma_z) sigma_z)
    double gamma_c = 0.0;

    // The paper quotes Fig. 2 rates as sqrt(gamma/2pi); this converts back.
    static double rate_from_sqrt_over_2pi(double s);
};

// Basis order: |g> = 0, |e> = 1.
SystemModel two_level(const TwoLevelParams& p);

// Dephasing-only two-level model (F = sqrt(gamma_z) sigma_z).
SystemModel two_level_dephasing(const TwoLevelParams& p);

struct MLevelParams {
    std::array<double, 3> delta{};      // detunings of g1..g3
    double v11 = 0.0, v21 = 0.0, v31 = 0.0;  // couplings g_i <-> e_1
    double v12 = 0.0, v22 = 0.0, v32 = 0.0;  // couplings g_i <-> e_2
    double gamma11 = 0.0, gamma12 = 0.0, gamma22 = 0.0, gamma23 = 0.0;   // decays e_j -> g_i
    double gamma_p11 = 0.0, gamma_p21 = 0.0, gamma_p22 = 0.0, gamma_p32 = 0.0;  // pumps g_i -> e_j
    double gamma_c = 0.0;

    void set_uniform_gamma(double g);
    void set_uniform_pump(double g);
};

// Basis order: g1, g2, g3, e1, e2 = 0..4. Zero-rate channels are dropped so
// pole counting sees the true number of dissipative pathways.
SystemModel m_level(const MLevelParams& p);

struct Preset {
    std::string name;
    std::string description;
    SystemModel model;                    // gamma_c set to the first published value
    std::vector<double> gamma_c_values;   // published sweep/figure values
    std::string initial_state;            // label of the published initial state
};

const std::vector<Preset>& presets();
std::optional<Preset> find_preset(const std::string& name);

// Index of a named basis state for a model built by this library
// (two-level: g, e; M-level: g1..g3, e1, e2). Returns -1 if unknown.
Eigen::Index state_index(const SystemModel& model, const std::string& label);

}  // namespace qmix
