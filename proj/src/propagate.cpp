#include "qmix/propagate.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace qmix {

Matrix evolution_operator(const SpectralDecomposition& dec, double t) {
    if (t < 0.0) throw Error("evolution_operator: t must be nonnegative");
    const Eigen::Index n2 = dec.dim();
    Matrix u = Matrix::Zero(n2, n2);
    for (Eigen::Index i = 0; i < dec.modes(); ++i) {
        u += std::exp(dec.eigenvalues(i) * t) * dec.projectors[size_t(i)];
    }
    return u;
}

Trajectory propagate(const SpectralDecomposition& dec, const Matrix& rho0,
                     std::span<const double> times) {
    check_density(rho0, "propagate: initial state");
    const Vector v0 = vectorize(rho0);
    Trajectory traj;
    traj.times.assign(times.begin(), times.end());
    traj.states.reserve(times.size());
    traj.trace.reserve(times.size());
    for (size_t k = 0; k < times.size(); ++k) {
        const Matrix u = evolution_operator(dec, times[k]);
        Matrix rho = hermitian_part(devectorize(u * v0));
        std::ostringstream where;
        where << "propagate: step " << k << " (t = " << times[k] << ")";
        check_density(rho, where.str());
        traj.trace.push_back(rho.trace().real());
        traj.states.push_back(std::move(rho));
    }
    return traj;
}

Matrix normalized_state(const Matrix& rho) {
    const double tr = rho.trace().real();
    if (tr <= kTolNorm) {
        std::ostringstream msg;
        msg << "normalized_state: trace " << tr << " below " << kTolNorm;
        throw VanishedTraceError(msg.str());
    }
    return rho / tr;
}

namespace {

// Hermitian square root with small negative eigenvalues clamped to zero.
Matrix psd_sqrt(const Matrix& rho, const char* who) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(rho));
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -kTolPsd) {
            std::ostringstream msg;
            msg << who << ": eigenvalue " << ev(i) << " below -" << kTolPsd;
            throw NotPositiveError(msg.str());
        }
        ev(i) = std::sqrt(std::max(0.0, ev(i)));
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const Matrix& rho, const Matrix& rho_ref) {
    const double tr = rho.trace().real();
    const double tr_ref = rho_ref.trace().real();
    if (tr <= kTolNorm || tr_ref <= kTolNorm) {
        throw VanishedTraceError("fidelity: vanished trace");
    }
    const Matrix root = psd_sqrt(rho_ref, "fidelity");
    const Matrix inner = psd_sqrt(root * rho * root, "fidelity");
    const double f = inner.trace().real() / std::sqrt(tr * tr_ref);
    return std::clamp(f, 0.0, 1.0);
}

ProjectorTraceReport projector_traces(const SpectralDecomposition& dec, const Matrix& rho0) {
    const Vector v0 = vectorize(rho0);
    ProjectorTraceReport rep;
    rep.per_pole.reserve(size_t(dec.modes()));
    for (Eigen::Index i = 0; i < dec.modes(); ++i) {
        const Complex ti = devectorize(dec.projectors[size_t(i)] * v0).trace();
        rep.per_pole.push_back(ti);
        if (dec.removed[size_t(i)]) continue;
        if (std::abs(dec.eigenvalues(i)) < dec.steady_tol) {
            rep.t0 += ti.real();
            rep.has_steady = true;
        } else {
            rep.t_rest += ti.real();
        }
    }
    return rep;
}

double semigroup_defect(const SpectralDecomposition& dec, double t, double tau) {
    const Matrix u_sum = evolution_operator(dec, t + tau);
    const Matrix u_split = evolution_operator(dec, t) * evolution_operator(dec, tau);
    return (u_sum - u_split).norm();
}

SpectralDecomposition decompose_model(const SystemModel& model) {
    const Generators gen = build_generators(model);
    if (model.gamma_c == 0.0) {
        return decompose_generator(gen.nh);
    }
    return eigendecompose(build_extended_matrix(build_pencil(gen, model.gamma_c)));
}

SweepResult gamma_c_sweep(const SystemModel& base, std::span<const double> gamma_cs,
                          const Matrix& rho0, std::span<const double> times, int jobs) {
    if (gamma_cs.size() < 2) {
        throw Error("gamma_c_sweep: at least 2 sweep points required");
    }
    SweepResult result;
    result.times.assign(times.begin(), times.end());
    result.rows.resize(gamma_cs.size());

    std::vector<double> gcs(gamma_cs.begin(), gamma_cs.end());
    std::sort(gcs.begin(), gcs.end());

    const auto run_point = [&](size_t idx) {
        SweepRow& row = result.rows[idx];
        row.gamma_c = gcs[idx];
        try {
            SystemModel model = base;
            model.gamma_c = gcs[idx];
            const auto dec = decompose_model(model);
            row.eigenvalues = dec.eigenvalues;
            std::sort(row.eigenvalues.data(), row.eigenvalues.data() + row.eigenvalues.size(),
                      [](Complex a, Complex b) {
                          if (a.real() != b.real()) return a.real() < b.real();
                          return a.imag() < b.imag();
                      });
            const auto traces = projector_traces(dec, rho0);
            row.t0 = traces.t0;
            row.t_rest = traces.t_rest;
            const auto traj = propagate(dec, rho0, times);
            row.trace = traj.trace;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    int workers = jobs > 0 ? jobs : int(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, int(gcs.size())));
    if (workers == 1) {
        for (size_t i = 0; i < gcs.size(); ++i) run_point(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(size_t(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < gcs.size(); i = next.fetch_add(1)) {
                    run_point(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return result;
}

std::vector<double> linear_grid(double start, double stop, int count) {
    if (count < 2 || stop <= start) {
        throw Error("linear_grid: need count >= 2 and stop > start");
    }
    std::vector<double> t(size_t(count));
    for (int i = 0; i < count; ++i) {
        t[size_t(i)] = start + (stop - start) * double(i) / double(count - 1);
    }
    return t;
}

}  // namespace qmix
