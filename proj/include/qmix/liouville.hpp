#pragma once

#include "qmix/types.hpp"

namespace qmix {

// Column-stacking vectorization: entry (r,c) of rho lands at index c*N + r,
// so A rho B maps to (B^T kron A) vec(rho).
Vector vectorize(const Matrix& rho);
Matrix devectorize(const Vector& v);

// (B^T kron A), the superoperator of rho -> A rho B in the fixed convention.
Matrix sandwich_superop(const Matrix& a, const Matrix& b);

// Row functional representing Tr in vectorized form.
Eigen::RowVectorXcd trace_row(Eigen::Index n);

// L_H = -i(1 kron H - H^* kron 1); rejects non-Hermitian H.
Matrix hamiltonian_superop(const Matrix& h);

// Lindblad dissipator L_D(F) = F^* kron F - 1/2 [(F^dag F)^T kron 1 + 1 kron F^dag F].
Matrix dissipator(const Matrix& f);

struct Generators {
    Matrix nh;         // L_NH
    Matrix lindblad;   // L_Lindblad = L_NH + J
    Matrix restoring;  // J = sum_i F_i^* kron F_i
};

Generators build_generators(const SystemModel& model);

// L_mixed(z) = L_NH + Gamma_c/(z+Gamma_c) J.  Throws PoleError at z = -Gamma_c.
Matrix eval_L_mixed(const SystemModel& model, Complex z);
Matrix eval_L_mixed(const Generators& gen, double gamma_c, Complex z);

}  // namespace qmix
