#include "qmix/models.hpp"

#include <cmath>
#include <numbers>

namespace qmix {

double TwoLevelParams::rate_from_sqrt_over_2pi(double s) {
    return 2.0 * std::numbers::pi * s * s;
}

namespace {

void require_nonnegative(double v, const char* name) {
    if (v < 0.0) throw Error(std::string("negative rate: ") + name);
}

}  // namespace

SystemModel two_level(const TwoLevelParams& p) {
    require_nonnegative(p.gamma, "gamma");
    require_nonnegative(p.gamma_pump, "gamma_pump");
    require_nonnegative(p.gamma_z, "gamma_z");
    require_nonnegative(p.gamma_c, "gamma_c");
    SystemModel m;
    m.hamiltonian = Matrix::Zero(2, 2);
    m.hamiltonian(1, 1) = p.delta_e;
    m.hamiltonian(0, 1) = p.v_eg;
    m.hamiltonian(1, 0) = p.v_eg;
    m.gamma_c = p.gamma_c;
    if (p.gamma > 0.0) {
        m.channels.push_back({elementary_jump(2, 0, 1, p.gamma), "decay e->g", ChannelKind::decay});
    }
    if (p.gamma_pump > 0.0) {
        m.channels.push_back({elementary_jump(2, 1, 0, p.gamma_pump), "pump g->e", ChannelKind::pump});
    }
    if (p.gamma_z > 0.0) {
        Matrix sz = Matrix::Zero(2, 2);
        sz(0, 0) = -1.0;
        sz(1, 1) = 1.0;
        m.channels.push_back({std::sqrt(p.gamma_z) * sz, "dephasing", ChannelKind::dephasing});
    }
    m.validate();
    return m;
}

SystemModel two_level_dephasing(const TwoLevelParams& p) {
    TwoLevelParams q = p;
    q.gamma = 0.0;
    q.gamma_pump = 0.0;
    return two_level(q);
}

void MLevelParams::set_uniform_gamma(double g) {
    gamma11 = gamma12 = gamma22 = gamma23 = g;
}

void MLevelParams::set_uniform_pump(double g) {
    gamma_p11 = gamma_p21 = gamma_p22 = gamma_p32 = g;
}

SystemModel m_level(const MLevelParams& p) {
    for (double g : {p.gamma11, p.gamma12, p.gamma22, p.gamma23,
                     p.gamma_p11, p.gamma_p21, p.gamma_p22, p.gamma_p32, p.gamma_c}) {
        require_nonnegative(g, "m_level rate");
    }
    constexpr Eigen::Index g1 = 0, g2 = 1, g3 = 2, e1 = 3, e2 = 4;
    SystemModel m;
    m.hamiltonian = Matrix::Zero(5, 5);
    for (int i = 0; i < 3; ++i) m.hamiltonian(i, i) = p.delta[size_t(i)];
    const auto couple = [&](Eigen::Index g, Eigen::Index e, double v) {
        m.hamiltonian(g, e) += v;
        m.hamiltonian(e, g) += v;
    };
    couple(g1, e1, p.v11);
    couple(g2, e1, p.v21);
    couple(g3, e1, p.v31);
    couple(g1, e2, p.v12);
    couple(g2, e2, p.v22);
    couple(g3, e2, p.v32);
    m.gamma_c = p.gamma_c;

    const auto decay = [&](Eigen::Index to, Eigen::Index from, double g, const char* label) {
        if (g > 0.0) m.channels.push_back({elementary_jump(5, to, from, g), label, ChannelKind::decay});
    };
    const auto pump = [&](Eigen::Index to, Eigen::Index from, double g, const char* label) {
        if (g > 0.0) m.channels.push_back({elementary_jump(5, to, from, g), label, ChannelKind::pump});
    };
    decay(g1, e1, p.gamma11, "decay e1->g1");
    decay(g2, e1, p.gamma12, "decay e1->g2");
    decay(g2, e2, p.gamma22, "decay e2->g2");
    decay(g3, e2, p.gamma23, "decay e2->g3");
    pump(e1, g1, p.gamma_p11, "pump g1->e1");
    pump(e1, g2, p.gamma_p21, "pump g2->e1");
    pump(e2, g2, p.gamma_p22, "pump g2->e2");
    pump(e2, g3, p.gamma_p32, "pump g3->e2");
    m.validate();
    return m;
}

namespace {

TwoLevelParams fig2_params(double delta_e) {
    TwoLevelParams p;
    p.delta_e = delta_e;
    p.v_eg = 0.2;
    p.gamma = TwoLevelParams::rate_from_sqrt_over_2pi(0.3);
    return p;
}

MLevelParams fig4_params(double pump) {
    MLevelParams p;
    p.delta = {-0.1, -0.1, -0.1};
    p.v11 = 1.0;
    p.v21 = 1.2;
    p.v31 = 0.0;
    p.v12 = 0.0;
    p.v22 = 1.5;
    p.v32 = 1.6;
    p.set_uniform_gamma(2.0);
    p.set_uniform_pump(pump);
    return p;
}

std::vector<Preset> make_presets() {
    std::vector<Preset> out;

    {
        TwoLevelParams p = fig2_params(1.0);
        p.gamma_c = 0.02;
        out.push_back({"fig2_off_resonance",
                       "two-level decay, off-resonance (delta_e = 1.0, V_eg = 0.2, sqrt(gamma/2pi) = 0.3)",
                       two_level(p),
                       {2e-5, 0.02, 20.0},
                       "ee"});
    }
    {
        TwoLevelParams p = fig2_params(0.001);
        p.gamma_c = 0.02;
        out.push_back({"fig2_on_resonance",
                       "two-level decay, on-resonance (delta_e = 0.001)",
                       two_level(p),
                       {2e-5, 0.02, 20.0},
                       "ee"});
    }
    {
        TwoLevelParams p;
        p.delta_e = 0.01;
        p.v_eg = 0.3;
        p.gamma = 0.15;
        p.gamma_pump = 0.2;
        p.gamma_c = 0.3;
        out.push_back({"figB1_finite_T",
                       "two-level with decay and incoherent pump (finite-temperature bath)",
                       two_level(p),
                       {0.3},
                       "ee"});
    }
    {
        TwoLevelParams p;
        p.delta_e = 0.01;
        p.v_eg = 0.3;
        p.gamma_z = 0.1;
        p.gamma_c = 0.02;
        out.push_back({"figB2_dephasing",
                       "two-level pure dephasing (F = sqrt(gamma_z) sigma_z)",
                       two_level_dephasing(p),
                       {0.02},
                       "ee"});
    }
    {
        // Third sweep row of the eigenvalue study. V_ek is read as the
        // system-continuum coupling sqrt(gamma/2pi); this interpretation is
        // unconfirmed, the symbol is not defined with the two-level parameters.
        TwoLevelParams p;
        p.delta_e = 0.001;
        p.v_eg = 0.1;
        p.gamma = TwoLevelParams::rate_from_sqrt_over_2pi(0.9);
        p.gamma_c = 0.02;
        out.push_back({"fig3_strong_coupling",
                       "two-level decay, strong continuum coupling (V_ek = 0.9 read as sqrt(gamma/2pi))",
                       two_level(p),
                       {0.02},
                       "ee"});
    }
    {
        MLevelParams p = fig4_params(0.0);
        p.gamma_c = 0.001;
        out.push_back({"fig4_cpt",
                       "M-level at the coherent-population-trapping point (gamma' = 0)",
                       m_level(p),
                       {0.001, 1000.0},
                       "g3g3"});
    }
    {
        // The figure caption gives gamma' = 0.1 while the body text says 0.2;
        // the caption value is used here.
        MLevelParams p = fig4_params(0.1);
        p.gamma_c = 0.001;
        out.push_back({"fig4_non_cpt",
                       "M-level off the CPT point (incoherent pumping gamma' = 0.1)",
                       m_level(p),
                       {0.001, 1000.0},
                       "g3g3"});
    }
    return out;
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = make_presets();
    return table;
}

std::optional<Preset> find_preset(const std::string& name) {
    for (const auto& p : presets()) {
        if (p.name == name) return p;
    }
    return std::nullopt;
}

Eigen::Index state_index(const SystemModel& model, const std::string& label) {
    if (model.dim() == 2) {
        if (label == "g") return 0;
        if (label == "e") return 1;
    } else if (model.dim() == 5) {
        if (label == "g1") return 0;
        if (label == "g2") return 1;
        if (label == "g3") return 2;
        if (label == "e1") return 3;
        if (label == "e2") return 4;
    }
    // numeric fallback
    try {
        size_t pos = 0;
        const long idx = std::stol(label, &pos);
        if (pos == label.size() && idx >= 0 && idx < model.dim()) return idx;
    } catch (...) {
    }
    return -1;
}

}  // namespace qmix
