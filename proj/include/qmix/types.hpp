#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmix {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerances used for state validation, n units of the paper (hbar = 1).
inline constexpr double kTolHermRel = 1e-12;   // relative to max |entry|
inline constexpr double kTolTrace = 1e-9;
inline constexpr double kTolPsd = 1e-9;
inline constexpr double kTolNorm = 1e-12;      // smallest trace considered nonzero

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonHermitianError : Error {
    using Error::Error;
};

struct PoleError : Error {
    using Error::Error;
};

struct DegeneratePencilError : Error {
    using Error::Error;
};

// Raised when the extended matrix is too close to defective for the spectral
// route; carries the eigenvalue cluster for diagnosis.
struct DefectiveSpectrumError : Error {
    DefectiveSpectrumError(const std::string& what, std::vector<Complex> cluster)
        : Error(what), eigenvalues(std::move(cluster)) {}
    std::vector<Complex> eigenvalues;
};

struct VanishedTraceError : Error {
    using Error::Error;
};

struct NotPositiveError : Error {
    using Error::Error;
};

struct UnsupportedChannelError : Error {
    using Error::Error;
};

struct TooLargeError : Error {
    using Error::Error;
};

struct PropagationError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    ConfigError(const std::string& what, std::string json_pointer = "")
        : Error(what), pointer(std::move(json_pointer)) {}
    std::string pointer;
};

enum class ChannelKind { decay, pump, dephasing };

// One dissipative channel; the rate is folded into the operator,
// e.g. F = sqrt(gamma) |b><a|.
struct JumpChannel {
    Matrix op;
    std::string label;
    ChannelKind kind = ChannelKind::decay;
};

// Hermitian Hamiltonian + jump channels + the continuum-return rate.
// This is the complete problem statement for the mixed generator.
struct SystemModel {
    Matrix hamiltonian;
    std::vector<JumpChannel> channels;
    double gamma_c = 0.0;

    Eigen::Index dim() const { return hamiltonian.rows(); }

    // Throws if the Hamiltonian is not Hermitian (relative tolerance),
    // gamma_c < 0, or a channel dimension mismatches.
    void validate() const;
};

double hermiticity_defect(const Matrix& a);

inline Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

// Checks Hermiticity, trace bounds and positivity of a density matrix;
// throws with the violated invariant named. `where` prefixes the message.
void check_density(const Matrix& rho, const std::string& where = {});

Matrix basis_projector(Eigen::Index n, Eigen::Index i);

inline Matrix elementary_jump(Eigen::Index n, Eigen::Index to, Eigen::Index from, double rate) {
    Matrix f = Matrix::Zero(n, n);
    f(to, from) = std::sqrt(rate);
    return f;
}

}  // namespace qmix
