#pragma once

#include "qmix/liouville.hpp"
#include "qmix/types.hpp"

#include <optional>

namespace qmix {

// Quadratic pencil D(z) = z^2 + A1 z + A0 whose roots are the dynamical
// poles of the mixed resolvent: (z - L_mixed(z))^{-1} = (z + Gamma_c) D(z)^{-1}.
struct QuadraticPencil {
    Matrix a0;  // -Gamma_c L_Lindblad
    Matrix a1;  // Gamma_c - L_Lindblad + J
    double gamma_c = 0.0;

    Eigen::Index dim() const { return a0.rows(); }
    Matrix eval(Complex z) const;
};

QuadraticPencil build_pencil(const SystemModel& model);
QuadraticPencil build_pencil(const Generators& gen, double gamma_c);

// Companion linearization [[0, I], [-A0, -A1]] in the doubled Liouville space.
struct ExtendedMatrix {
    Matrix m;
    double gamma_c = 0.0;

    Eigen::Index dim() const { return m.rows(); }  // 2 N^2
};

ExtendedMatrix build_extended_matrix(const QuadraticPencil& pencil);

// Eigenvalues of the companion matrix with the generalized projectors
// X_i = (lambda_i + Gamma_c) S_o^T |v_i><w_i| S_e acting on the reduced space.
// Eigenvalues within tol_pole of -Gamma_c are flagged removed; their
// projectors vanish and they are not dynamical modes.
struct SpectralDecomposition {
    Vector eigenvalues;              // 2 N^2 entries
    std::vector<Matrix> projectors;  // N^2 x N^2 each
    std::vector<bool> removed;
    double condition_number = 0.0;   // of the companion eigenvector matrix
    double gamma_c = 0.0;
    double steady_tol = 1e-9;        // |lambda| below this counts as the steady pole

    Eigen::Index dim() const { return projectors.empty() ? 0 : projectors.front().rows(); }
    Eigen::Index modes() const { return eigenvalues.size(); }
};

inline double pole_tolerance(double gamma_c) { return 1e-7 * std::max(1.0, gamma_c); }

// Threshold above which the companion eigenbasis is treated as defective.
inline constexpr double kDefectiveCond = 1e10;

SpectralDecomposition eigendecompose(const ExtendedMatrix& ext);

// Direct spectral decomposition of a z-independent generator (used for the
// Gamma_c = 0 short circuit, where the pencil degenerates and the dynamics
// is plain exp(L_NH t)).
SpectralDecomposition decompose_generator(const Matrix& generator);

struct PoleRecord {
    Complex lambda;
    double projector_norm = 0.0;
    bool removed = false;
};

struct PoleReport {
    std::vector<PoleRecord> poles;
    int n_removed = 0;
    int n_active = 0;
    // Multiplicity rule (Appendix-style): eigenvalues at -Gamma_c number
    // N^2 minus the number of connected dissipative pathways, where the
    // pathway count is the rank of the restoring operator J. Only stated
    // for elementary jump channels |b><a|.
    bool rule_applicable = false;
    int pathways = 0;
    std::optional<int> expected_removed;
    bool rule_holds = false;
};

PoleReport classify_poles(const SpectralDecomposition& dec, const SystemModel& model);

// Counts connected dissipative pathways as rank(J).
int count_pathways(const Generators& gen);

bool is_elementary_jump(const Matrix& f);

struct LinearizationReport {
    struct Entry {
        Complex lambda;
        double residual = 0.0;  // sigma_min(D(lambda)) / ||D(lambda)||
        bool pass = false;
    };
    std::vector<Entry> entries;  // non-removed poles only
    bool all_pass = true;
};

// Checks that every non-removed eigenvalue of the companion matrix is a
// root of det D(z): sigma_min(D(lambda)) <= 1e-6 ||D(lambda)||.
LinearizationReport verify_linearization(const QuadraticPencil& pencil,
                                         const SpectralDecomposition& dec);

}  // namespace qmix
