#include "qmix/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <ostream>

namespace qmix {

using nlohmann::json;

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const ObservableSelection& sel,
                          const Trajectory* nh_reference,
                          const Trajectory* lindblad_reference) {
    const Eigen::Index n = traj.dim();
    os << "t";
    if (sel.trace) os << ",trace";
    if (sel.populations) {
        for (Eigen::Index i = 0; i < n; ++i) os << ",rho_" << i << "_" << i;
    }
    for (const auto& [r, c] : sel.coherences) {
        os << ",re_rho_" << r << "_" << c << ",im_rho_" << r << "_" << c;
    }
    if (sel.fidelity_nh) os << ",fidelity_nh";
    if (sel.fidelity_lindblad) os << ",fidelity_lindblad";
    os << "\n";

    for (size_t k = 0; k < traj.times.size(); ++k) {
        os << format_float(traj.times[k]);
        const Matrix& rho = traj.states[k];
        if (sel.trace) os << "," << format_float(traj.trace[k]);
        if (sel.populations) {
            for (Eigen::Index i = 0; i < n; ++i) os << "," << format_float(rho(i, i).real());
        }
        for (const auto& [r, c] : sel.coherences) {
            os << "," << format_float(rho(r, c).real()) << "," << format_float(rho(r, c).imag());
        }
        if (sel.fidelity_nh) {
            os << "," << format_float(fidelity(rho, nh_reference->states[k]));
        }
        if (sel.fidelity_lindblad) {
            os << "," << format_float(fidelity(rho, lindblad_reference->states[k]));
        }
        os << "\n";
    }
}

namespace {

json complex_json(Complex z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

json trajectory_json(const Trajectory& traj) {
    json states = json::array();
    for (size_t k = 0; k < traj.times.size(); ++k) {
        states.push_back({{"t", traj.times[k]},
                          {"trace", traj.trace[k]},
                          {"rho", matrix_json(traj.states[k])}});
    }
    return json{{"dim", traj.dim()}, {"states", std::move(states)}};
}

json pole_report_json(const PoleReport& report) {
    json poles = json::array();
    for (const auto& p : report.poles) {
        poles.push_back({{"re", p.lambda.real()},
                         {"im", p.lambda.imag()},
                         {"projector_norm", p.projector_norm},
                         {"removed", p.removed}});
    }
    json out{{"poles", std::move(poles)},
             {"n_removed", report.n_removed},
             {"n_active", report.n_active}};
    if (report.rule_applicable) {
        out["multiplicity_rule"] = {{"pathways", report.pathways},
                                    {"expected_removed", *report.expected_removed},
                                    {"holds", report.rule_holds}};
    }
    return out;
}

json projector_traces_json(const ProjectorTraceReport& rep) {
    json per_pole = json::array();
    for (const auto& t : rep.per_pole) per_pole.push_back(complex_json(t));
    return json{{"t0", rep.t0},
                {"t_rest", rep.t_rest},
                {"has_steady_pole", rep.has_steady},
                {"per_pole", std::move(per_pole)}};
}

json sweep_json(const SweepResult& sweep) {
    json rows = json::array();
    for (const auto& row : sweep.rows) {
        json eigs = json::array();
        for (Eigen::Index i = 0; i < row.eigenvalues.size(); ++i) {
            eigs.push_back(complex_json(row.eigenvalues(i)));
        }
        json j{{"gamma_c", row.gamma_c},
               {"eigenvalues", std::move(eigs)},
               {"t0", row.t0},
               {"t_rest", row.t_rest}};
        if (!row.error.empty()) j["error"] = row.error;
        rows.push_back(std::move(j));
    }
    return json{{"rows", std::move(rows)}};
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
    Eigen::Index n_eig = 0;
    for (const auto& row : sweep.rows) n_eig = std::max(n_eig, row.eigenvalues.size());
    os << "gamma_c";
    for (Eigen::Index i = 0; i < n_eig; ++i) os << ",re_lambda_" << i << ",im_lambda_" << i;
    os << ",t0,t_rest,error\n";
    for (const auto& row : sweep.rows) {
        os << format_float(row.gamma_c);
        for (Eigen::Index i = 0; i < n_eig; ++i) {
            if (i < row.eigenvalues.size()) {
                os << "," << format_float(row.eigenvalues(i).real())
                   << "," << format_float(row.eigenvalues(i).imag());
            } else {
                os << ",,";
            }
        }
        os << "," << format_float(row.t0) << "," << format_float(row.t_rest)
           << "," << row.error << "\n";
    }
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceEntry>& table) {
    os << "K,W,sup_error,trace_error,error\n";
    for (const auto& cell : table) {
        os << cell.k << "," << format_float(cell.w) << ","
           << format_float(cell.sup_error) << "," << format_float(cell.trace_error)
           << "," << cell.error << "\n";
    }
}

}  // namespace qmix
