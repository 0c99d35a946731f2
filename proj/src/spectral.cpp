#include "qmix/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmix {

Matrix QuadraticPencil::eval(Complex z) const {
    const Eigen::Index n2 = dim();
    return (z * z) * Matrix::Identity(n2, n2) + z * a1 + a0;
}

QuadraticPencil build_pencil(const Generators& gen, double gamma_c) {
    if (gamma_c <= 0.0) {
        throw DegeneratePencilError(
            "build_pencil: gamma_c = 0 degenerates the pencil (A0 = 0); "
            "use the direct non-Hermitian path instead");
    }
    const Eigen::Index n2 = gen.lindblad.rows();
    QuadraticPencil p;
    p.gamma_c = gamma_c;
    p.a1 = gamma_c * Matrix::Identity(n2, n2) - gen.lindblad + gen.restoring;
    p.a0 = -gamma_c * gen.lindblad;
    return p;
}

QuadraticPencil build_pencil(const SystemModel& model) {
    return build_pencil(build_generators(model), model.gamma_c);
}

ExtendedMatrix build_extended_matrix(const QuadraticPencil& pencil) {
    const Eigen::Index n2 = pencil.dim();
    ExtendedMatrix ext;
    ext.gamma_c = pencil.gamma_c;
    ext.m = Matrix::Zero(2 * n2, 2 * n2);
    ext.m.block(0, n2, n2, n2) = Matrix::Identity(n2, n2);
    ext.m.block(n2, 0, n2, n2) = -pencil.a0;
    ext.m.block(n2, n2, n2, n2) = -pencil.a1;
    return ext;
}

namespace {

double condition_estimate(const Matrix& v) {
    Eigen::JacobiSVD<Matrix> svd(v);
    const auto& s = svd.singularValues();
    const double lo = s(s.size() - 1);
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / lo;
}

std::vector<Complex> cluster_near(const Vector& lam, Complex center, double radius) {
    std::vector<Complex> out;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (std::abs(lam(i) - center) <= radius) out.push_back(lam(i));
    }
    return out;
}

}  // namespace

SpectralDecomposition eigendecompose(const ExtendedMatrix& ext) {
    const Eigen::Index n2 = ext.dim() / 2;
    const double gc = ext.gamma_c;

    // Rescale z = s * zeta before the eigensolve; for large Gamma_c the raw
    // companion blocks are badly out of scale (A0 ~ Gamma_c ||L||) and the
    // eigenbasis conditioning degrades by orders of magnitude.
    const double s = std::max(1.0, gc);
    Matrix a0 = -ext.m.block(n2, 0, n2, n2);
    Matrix a1 = -ext.m.block(n2, n2, n2, n2);
    Matrix scaled = Matrix::Zero(2 * n2, 2 * n2);
    scaled.block(0, n2, n2, n2) = Matrix::Identity(n2, n2);
    scaled.block(n2, 0, n2, n2) = -a0 / (s * s);
    scaled.block(n2, n2, n2, n2) = -a1 / s;

    Eigen::ComplexEigenSolver<Matrix> es(scaled, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success) {
        throw Error("eigendecompose: complex eigensolver failed to converge");
    }
    const Matrix& v = es.eigenvectors();
    const Vector lam = s * es.eigenvalues();

    const double cond = condition_estimate(v);
    if (!(cond < kDefectiveCond)) {
        std::ostringstream msg;
        msg << "eigendecompose: eigenvector matrix condition " << cond
            << " exceeds " << kDefectiveCond
            << "; the extended matrix is numerically defective";
        // Report the tightest cluster as the likely culprit.
        double best = std::numeric_limits<double>::infinity();
        Complex center = 0.0;
        for (Eigen::Index i = 0; i < lam.size(); ++i) {
            for (Eigen::Index j = i + 1; j < lam.size(); ++j) {
                const double d = std::abs(lam(i) - lam(j));
                if (d < best) {
                    best = d;
                    center = 0.5 * (lam(i) + lam(j));
                }
            }
        }
        throw DefectiveSpectrumError(msg.str(), cluster_near(lam, center, 10 * best + 1e-12));
    }

    Matrix w = v.partialPivLu().inverse();

    const double tol = pole_tolerance(gc);
    SpectralDecomposition dec;
    dec.eigenvalues = lam;
    dec.gamma_c = gc;
    dec.condition_number = cond;
    dec.steady_tol = 1e-9 * std::max(1.0, a0.norm() / gc);  // a0 = -gc L_Lindblad
    dec.projectors.reserve(2 * n2);
    dec.removed.reserve(2 * n2);
    for (Eigen::Index i = 0; i < 2 * n2; ++i) {
        // X_i = (lambda_i + gc) S_o^T |v_i><w_i| S_e, with the 1/s factor from
        // the similarity between the scaled and unscaled companion forms.
        const Complex weight = (lam(i) + gc) / s;
        dec.projectors.push_back(weight * (v.col(i).head(n2) * w.row(i).tail(n2)));
        dec.removed.push_back(std::abs(lam(i) + gc) <= tol);
    }
    return dec;
}

SpectralDecomposition decompose_generator(const Matrix& generator) {
    const Eigen::Index n2 = generator.rows();
    Eigen::ComplexEigenSolver<Matrix> es(generator, true);
    if (es.info() != Eigen::Success) {
        throw Error("decompose_generator: complex eigensolver failed to converge");
    }
    const Matrix& v = es.eigenvectors();
    Matrix w = v.partialPivLu().inverse();
    SpectralDecomposition dec;
    dec.eigenvalues = es.eigenvalues();
    dec.gamma_c = 0.0;
    dec.condition_number = condition_estimate(v);
    dec.steady_tol = 1e-9 * std::max(1.0, generator.norm());
    dec.projectors.reserve(n2);
    dec.removed.assign(n2, false);
    for (Eigen::Index i = 0; i < n2; ++i) {
        dec.projectors.push_back(v.col(i) * w.row(i));
    }
    return dec;
}

bool is_elementary_jump(const Matrix& f) {
    Eigen::Index nonzero = 0;
    bool off_diagonal = true;
    for (Eigen::Index c = 0; c < f.cols(); ++c) {
        for (Eigen::Index r = 0; r < f.rows(); ++r) {
            if (std::abs(f(r, c)) > 0.0) {
                ++nonzero;
                if (r == c) off_diagonal = false;
            }
        }
    }
    return nonzero == 1 && off_diagonal;
}

int count_pathways(const Generators& gen) {
    Eigen::JacobiSVD<Matrix> svd(gen.restoring);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) <= 0.0) return 0;
    const double tol = 1e-10 * s(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > tol) ++rank;
    }
    return rank;
}

PoleReport classify_poles(const SpectralDecomposition& dec, const SystemModel& model) {
    PoleReport rep;
    double max_norm = 0.0;
    for (const auto& x : dec.projectors) max_norm = std::max(max_norm, x.norm());
    for (Eigen::Index i = 0; i < dec.modes(); ++i) {
        PoleRecord rec;
        rec.lambda = dec.eigenvalues(i);
        rec.projector_norm = dec.projectors[size_t(i)].norm();
        rec.removed = dec.removed[size_t(i)];
        rep.poles.push_back(rec);
        (rec.removed ? rep.n_removed : rep.n_active)++;
    }
    std::sort(rep.poles.begin(), rep.poles.end(), [](const PoleRecord& a, const PoleRecord& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
        return a.lambda.imag() < b.lambda.imag();
    });

    rep.rule_applicable = !model.channels.empty();
    for (const auto& ch : model.channels) {
        if (!is_elementary_jump(ch.op)) rep.rule_applicable = false;
    }
    if (rep.rule_applicable) {
        const auto gen = build_generators(model);
        rep.pathways = count_pathways(gen);
        const int n2 = int(model.dim() * model.dim());
        rep.expected_removed = n2 - rep.pathways;
        rep.rule_holds = (rep.n_removed == *rep.expected_removed);
    }
    return rep;
}

LinearizationReport verify_linearization(const QuadraticPencil& pencil,
                                         const SpectralDecomposition& dec) {
    LinearizationReport rep;
    for (Eigen::Index i = 0; i < dec.modes(); ++i) {
        if (dec.removed[size_t(i)]) continue;
        const Complex lam = dec.eigenvalues(i);
        const Matrix d = pencil.eval(lam);
        Eigen::JacobiSVD<Matrix> svd(d);
        const auto& s = svd.singularValues();
        LinearizationReport::Entry e;
        e.lambda = lam;
        const double norm = s(0);
        e.residual = norm > 0.0 ? s(s.size() - 1) / norm : 0.0;
        e.pass = e.residual <= 1e-6;
        rep.entries.push_back(e);
        rep.all_pass = rep.all_pass && e.pass;
    }
    return rep;
}

}  // namespace qmix
