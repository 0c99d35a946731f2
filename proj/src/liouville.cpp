#include "qmix/liouville.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <sstream>

namespace qmix {

double hermiticity_defect(const Matrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

void SystemModel::validate() const {
    const Eigen::Index n = dim();
    if (n < 1 || hamiltonian.cols() != n) {
        throw Error("SystemModel: Hamiltonian must be square and non-empty");
    }
    if (!hamiltonian.allFinite()) {
        throw Error("SystemModel: Hamiltonian has non-finite entries");
    }
    const double scale = hamiltonian.cwiseAbs().maxCoeff();
    const double defect = hermiticity_defect(hamiltonian);
    if (defect > kTolHermRel * std::max(1.0, scale)) {
        std::ostringstream msg;
        msg << "SystemModel: Hamiltonian is not Hermitian, max deviation " << defect;
        throw NonHermitianError(msg.str());
    }
    if (gamma_c < 0.0) {
        throw Error("SystemModel: gamma_c must be nonnegative");
    }
    for (const auto& ch : channels) {
        if (ch.op.rows() != n || ch.op.cols() != n) {
            throw Error("SystemModel: jump operator dimension mismatch for channel '" + ch.label + "'");
        }
        if (!ch.op.allFinite()) {
            throw Error("SystemModel: jump operator has non-finite entries for channel '" + ch.label + "'");
        }
    }
}

void check_density(const Matrix& rho, const std::string& where) {
    const auto fail = [&](const std::string& what) {
        throw PropagationError(where.empty() ? what : where + ": " + what);
    };
    if (!rho.allFinite()) fail("density matrix has non-finite entries");
    const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
    const double herm = hermiticity_defect(rho);
    if (herm > kTolHermRel * scale) {
        std::ostringstream msg;
        msg << "density matrix not Hermitian, deviation " << herm;
        fail(msg.str());
    }
    const double tr = rho.trace().real();
    if (tr < -kTolTrace || tr > 1.0 + kTolTrace) {
        std::ostringstream msg;
        msg << "trace " << tr << " outside [0, 1]";
        fail(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(rho), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -kTolPsd) {
        std::ostringstream msg;
        msg << "density matrix not positive semidefinite, min eigenvalue " << lo;
        fail(msg.str());
    }
}

Matrix basis_projector(Eigen::Index n, Eigen::Index i) {
    Matrix p = Matrix::Zero(n, n);
    p(i, i) = 1.0;
    return p;
}

Vector vectorize(const Matrix& rho) {
    return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix devectorize(const Vector& v) {
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
    if (n * n != v.size()) throw Error("devectorize: length is not a perfect square");
    return Eigen::Map<const Matrix>(v.data(), n, n);
}

Matrix sandwich_superop(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(b.transpose(), a);
}

Eigen::RowVectorXcd trace_row(Eigen::Index n) {
    Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(n * n);
    for (Eigen::Index i = 0; i < n; ++i) row(i * n + i) = 1.0;
    return row;
}

Matrix hamiltonian_superop(const Matrix& h) {
    const Eigen::Index n = h.rows();
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double defect = hermiticity_defect(h);
    if (defect > kTolHermRel * scale) {
        std::ostringstream msg;
        msg << "hamiltonian_superop: H is not Hermitian, max deviation " << defect;
        throw NonHermitianError(msg.str());
    }
    const Matrix id = Matrix::Identity(n, n);
    return Complex(0, -1) * (Eigen::kroneckerProduct(id, h) - Eigen::kroneckerProduct(h.conjugate(), id)).eval();
}

Matrix dissipator(const Matrix& f) {
    const Eigen::Index n = f.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix fdf = f.adjoint() * f;
    return Eigen::kroneckerProduct(f.conjugate(), f).eval()
         - 0.5 * (Eigen::kroneckerProduct(fdf.transpose(), id).eval()
                + Eigen::kroneckerProduct(id, fdf).eval());
}

Generators build_generators(const SystemModel& model) {
    model.validate();
    const Eigen::Index n = model.dim();
    const Matrix id = Matrix::Identity(n, n);
    Generators g;
    g.nh = hamiltonian_superop(model.hamiltonian);
    g.restoring = Matrix::Zero(n * n, n * n);
    for (const auto& ch : model.channels) {
        const Matrix fdf = ch.op.adjoint() * ch.op;
        g.nh -= 0.5 * (Eigen::kroneckerProduct(id, fdf).eval()
                     + Eigen::kroneckerProduct(fdf.transpose(), id).eval());
        g.restoring += Eigen::kroneckerProduct(ch.op.conjugate(), ch.op);
    }
    g.lindblad = g.nh + g.restoring;
    return g;
}

Matrix eval_L_mixed(const Generators& gen, double gamma_c, Complex z) {
    if (std::abs(z + gamma_c) == 0.0) {
        throw PoleError("eval_L_mixed: z = -gamma_c is a pole of Delta(z)");
    }
    return gen.nh + (gamma_c / (z + gamma_c)) * gen.restoring;
}

Matrix eval_L_mixed(const SystemModel& model, Complex z) {
    return eval_L_mixed(build_generators(model), model.gamma_c, z);
}

}  // namespace qmix
