#include "qmix/microscopic.hpp"

#include <Eigen/SparseCore>

#include <cmath>
#include <numbers>
#include <sstream>

namespace qmix {

ContinuumSpec default_continuum(const SystemModel& base, int k_count) {
    double scale = base.gamma_c;
    scale = std::max(scale, base.hamiltonian.cwiseAbs().maxCoeff());
    for (const auto& ch : base.channels) {
        scale = std::max(scale, ch.op.squaredNorm());  // gamma for elementary jumps
    }
    ContinuumSpec spec;
    spec.k_count = k_count;
    spec.half_bandwidth = 20.0 * std::max(scale, 1e-3);
    return spec;
}

MicroscopicModel build_microscopic(const SystemModel& base, const ContinuumSpec& spec) {
    base.validate();
    if (spec.k_count < 8) throw Error("build_microscopic: k_count must be at least 8");
    if (spec.half_bandwidth <= 0.0) throw Error("build_microscopic: half_bandwidth must be positive");

    const Eigen::Index n = base.dim();
    struct Channel {
        Eigen::Index source, target;
        double gamma;
    };
    std::vector<Channel> chans;
    for (const auto& ch : base.channels) {
        if (!is_elementary_jump(ch.op)) {
            throw UnsupportedChannelError(
                "build_microscopic: channel '" + ch.label +
                "' is not an elementary jump |b><a|; it has no continuum realization");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            for (Eigen::Index r = 0; r < n; ++r) {
                if (std::abs(ch.op(r, c)) > 0.0) {
                    chans.push_back({c, r, std::norm(ch.op(r, c))});
                }
            }
        }
    }

    MicroscopicModel micro;
    micro.base = base;
    const Eigen::Index k = spec.k_count;
    const Eigen::Index full = n + k * Eigen::Index(chans.size());
    micro.full_hamiltonian = Matrix::Zero(full, full);
    micro.full_hamiltonian.topLeftCorner(n, n) = base.hamiltonian;

    const double d_omega = spec.spacing();
    Eigen::Index offset = n;
    for (const auto& ch : chans) {
        micro.continua.push_back(spec);
        const double v = std::sqrt(ch.gamma * d_omega / (2.0 * std::numbers::pi));
        for (Eigen::Index j = 0; j < k; ++j) {
            const Eigen::Index idx = offset + j;
            micro.full_hamiltonian(idx, idx) = -spec.half_bandwidth + double(j) * d_omega;
            micro.full_hamiltonian(ch.source, idx) = v;
            micro.full_hamiltonian(idx, ch.source) = v;
            micro.jumps.emplace_back(ch.target, idx);
        }
        offset += k;
    }
    return micro;
}

namespace {

using Sparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// Full Lindblad Liouvillian in the column-stacking convention, assembled
// sparse: -i(1 kron H_NH - H_NH^* kron 1) plus the jump feeding terms.
Sparse full_liouvillian(const MicroscopicModel& micro) {
    const Eigen::Index nf = micro.full_dim();
    const double gc = micro.base.gamma_c;

    Matrix h_nh = micro.full_hamiltonian;
    for (const auto& [target, k] : micro.jumps) {
        (void)target;
        h_nh(k, k) -= Complex(0.0, 0.5) * gc;
    }

    std::vector<Eigen::Triplet<Complex>> trip;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> nz;
    for (Eigen::Index q = 0; q < nf; ++q) {
        for (Eigen::Index p = 0; p < nf; ++p) {
            if (h_nh(p, q) != Complex(0.0)) nz.emplace_back(p, q);
        }
    }
    trip.reserve(2 * nz.size() * size_t(nf) + micro.jumps.size());
    const Complex mi(0.0, -1.0);
    for (const auto& [p, q] : nz) {
        const Complex hv = h_nh(p, q);
        for (Eigen::Index c = 0; c < nf; ++c) {
            trip.emplace_back(c * nf + p, c * nf + q, mi * hv);     // -i (1 kron H_NH)
        }
        for (Eigen::Index r = 0; r < nf; ++r) {
            trip.emplace_back(p * nf + r, q * nf + r, -mi * std::conj(hv));  // +i (H_NH^* kron 1)
        }
    }
    for (const auto& [target, k] : micro.jumps) {
        trip.emplace_back(target * nf + target, k * nf + k, Complex(gc, 0.0));
    }
    Sparse l(nf * nf, nf * nf);
    l.setFromTriplets(trip.begin(), trip.end());
    l.makeCompressed();
    return l;
}

double spectral_scale(const MicroscopicModel& micro) {
    double w = 0.0;
    for (const auto& c : micro.continua) w = std::max(w, c.half_bandwidth);
    const double h_disc = micro.base.hamiltonian.cwiseAbs().rowwise().sum().maxCoeff();
    double coupling_sq = 0.0;
    for (const auto& ch : micro.base.channels) coupling_sq += ch.op.squaredNorm();
    return 2.0 * (w + h_disc + std::sqrt(coupling_sq)) + micro.base.gamma_c;
}

}  // namespace

MicroscopicRun run_microscopic(const MicroscopicModel& micro, const Matrix& rho0,
                               std::span<const double> times,
                               const MicroscopicOptions& opt) {
    const Eigen::Index n = micro.base.dim();
    const Eigen::Index nf = micro.full_dim();
    if (double(nf) * double(nf) > opt.liouville_cap) {
        std::ostringstream msg;
        msg << "run_microscopic: full Liouville dimension " << nf * nf
            << " exceeds cap " << opt.liouville_cap;
        throw TooLargeError(msg.str());
    }
    if (rho0.rows() != n || rho0.cols() != n) {
        throw Error("run_microscopic: rho0 must live on the discrete partition");
    }
    check_density(rho0, "run_microscopic: initial state");
    if (times.empty()) throw Error("run_microscopic: empty time grid");

    const Sparse liouv = full_liouvillian(micro);

    double t_rec = std::numeric_limits<double>::infinity();
    for (const auto& c : micro.continua) t_rec = std::min(t_rec, c.recurrence_time());

    MicroscopicRun run;
    run.recurrence_time = t_rec;
    run.horizon_exceeded = times.back() > t_rec;

    const double dt = opt.dt > 0.0 ? opt.dt : 0.1 / spectral_scale(micro);

    Matrix full0 = Matrix::Zero(nf, nf);
    full0.topLeftCorner(n, n) = rho0;
    Vector v = vectorize(full0);

    Vector k1(v.size()), k2(v.size()), k3(v.size()), k4(v.size()), tmp(v.size());
    const auto rk4_step = [&](double h) {
        k1.noalias() = liouv * v;
        tmp = v + (0.5 * h) * k1;
        k2.noalias() = liouv * tmp;
        tmp = v + (0.5 * h) * k2;
        k3.noalias() = liouv * tmp;
        tmp = v + h * k3;
        k4.noalias() = liouv * tmp;
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    run.reduced.times.assign(times.begin(), times.end());
    double t = 0.0;
    for (const double target : times) {
        if (target < t) throw Error("run_microscopic: time grid must be ascending from 0");
        const double span = target - t;
        if (span > 0.0) {
            const auto steps = std::max<long>(1, long(std::ceil(span / dt)));
            const double h = span / double(steps);
            for (long s = 0; s < steps; ++s) rk4_step(h);
            t = target;
        }
        const Matrix full = devectorize(v);
        Matrix reduced = hermitian_part(full.topLeftCorner(n, n));
        run.full_trace.push_back(full.trace().real());
        run.reduced.trace.push_back(reduced.trace().real());
        run.reduced.states.push_back(std::move(reduced));
    }
    return run;
}

std::vector<ConvergenceEntry> convergence_study(const SystemModel& base, const Matrix& rho0,
                                                std::span<const double> times,
                                                std::span<const int> k_values,
                                                std::span<const double> w_values,
                                                const MicroscopicOptions& opt) {
    if (k_values.size() < 1 || w_values.size() < 1 ||
        (k_values.size() < 2 && w_values.size() < 2)) {
        throw Error("convergence_study: need at least 2 values along one axis");
    }
    const auto dec = decompose_model(base);
    const auto reference = propagate(dec, rho0, times);

    std::vector<ConvergenceEntry> table;
    for (const int k : k_values) {
        for (const double w : w_values) {
            ConvergenceEntry cell;
            cell.k = k;
            cell.w = w;
            try {
                ContinuumSpec spec{k, w};
                const auto micro = build_microscopic(base, spec);
                const auto run = run_microscopic(micro, rho0, times, opt);
                for (size_t i = 0; i < times.size(); ++i) {
                    const double dev =
                        (run.reduced.states[i] - reference.states[i]).cwiseAbs().maxCoeff();
                    cell.sup_error = std::max(cell.sup_error, dev);
                    cell.trace_error = std::max(
                        cell.trace_error, std::abs(run.reduced.trace[i] - reference.trace[i]));
                }
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
            table.push_back(std::move(cell));
        }
    }
    return table;
}

}  // namespace qmix
