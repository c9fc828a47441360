#include "nimfa/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>

#include "nimfa/error.hpp"

namespace nimfa::io {

namespace {

constexpr int kDigits = 17;

std::ostream& full_precision(std::ostream& os) {
    os << std::setprecision(kDigits);
    return os;
}

}  // namespace

json to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

json to_json(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

Vector vector_from_json(const json& j) {
    if (!j.is_array()) throw InvalidParameter("expected a JSON array of numbers");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw InvalidParameter("expected a JSON array of numbers");
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw InvalidParameter("expected a JSON array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Vector row = vector_from_json(j[static_cast<std::size_t>(i)]);
        if (row.size() != cols) throw InvalidParameter("ragged matrix rows");
        m.row(i) = row.transpose();
    }
    return m;
}

json model_to_json(const NetworkModel& m) {
    json j;
    j["n"] = m.n();
    j["q"] = to_json(m.q());
    j["w"] = to_json(m.w());
    if (m.source()) {
        j["beta"] = to_json(m.source()->beta());
        j["delta"] = to_json(m.source()->delta());
        j["t"] = m.source()->t();
    }
    return j;
}

NetworkModel model_from_json(const json& j) {
    if (!j.is_object()) throw InvalidParameter("model file must contain a JSON object");
    const bool discrete = j.contains("q") && j.contains("w");
    const bool continuous = j.contains("beta") && j.contains("delta") && j.contains("t");
    if (!discrete && (j.contains("q") || j.contains("w")))
        throw InvalidParameter("model file: 'q' and 'w' must be given together");
    if (!discrete && !continuous)
        throw InvalidParameter("model file needs {q, w} or {beta, delta, t}");

    std::optional<ContinuousParams> source;
    if (continuous) {
        if (!j["t"].is_number()) throw InvalidParameter("model file: 't' must be a number");
        source.emplace(matrix_from_json(j["beta"]), vector_from_json(j["delta"]),
                       j["t"].get<double>());
    }
    NetworkModel m = discrete
        ? (source ? NetworkModel(vector_from_json(j["q"]), matrix_from_json(j["w"]), *source)
                  : NetworkModel(vector_from_json(j["q"]), matrix_from_json(j["w"])))
        : discretize(*source);

    if (j.contains("n")) {
        if (!j["n"].is_number_integer() || j["n"].get<long long>() != static_cast<long long>(m.n()))
            throw InvalidParameter("model file: 'n' does not match the rate dimensions");
    }
    return m;
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidParameter("malformed JSON in " + path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InvalidParameter("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

NetworkModel load_model(const std::filesystem::path& path) {
    return model_from_json(read_json(path));
}

Vector load_vector(const std::filesystem::path& path) {
    return vector_from_json(read_json(path));
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    full_precision(os);
    const Eigen::Index n = traj.size() == 0 ? 0 : traj.states.front().size();
    os << 'k';
    for (Eigen::Index i = 1; i <= n; ++i) os << ",v_" << i;
    os << '\n';
    for (std::size_t j = 0; j < traj.size(); ++j) {
        os << traj.k_of(j);
        for (Eigen::Index i = 0; i < n; ++i) os << ',' << traj.states[j][i];
        os << '\n';
    }
}

json steady_state_to_json(const SteadyState& ss, double rho_r, double rho_f) {
    return json{{"v_inf", to_json(ss.v_inf)},
                {"residual", ss.residual},
                {"lower", to_json(ss.lower)},
                {"upper", to_json(ss.upper)},
                {"rho_R", rho_r},
                {"rho_F", rho_f},
                {"iterations", ss.iterations}};
}

json monotonicity_to_json(const MonotonicityReport& report, const ConditionMargin& cond1,
                          const ConditionMargin& cond2) {
    json j;
    j["s_minus"] = report.s_minus;
    j["s_minus_rounding"] = report.s_minus_rounding;
    j["stringency"] = report.stringency;
    j["onset"] = report.onset ? json(*report.onset) : json(nullptr);
    j["horizon"] = report.horizon;
    j["condition1"] = cond1.holds;
    j["condition2"] = cond2.holds;
    j["margins"] = to_json(cond1.margin);
    j["margins_condition2"] = to_json(cond2.margin);
    return j;
}

void write_bounds_csv(std::ostream& os, const BoundsBundle& b, const Trajectory& reference,
                      const std::vector<std::size_t>& nodes) {
    full_precision(os);
    os << "k,node,v,lb,ub,ub1,ub2\n";
    for (std::size_t j = 0; j < b.ub.size(); ++j) {
        const std::size_t k = b.ub.k_of(j);
        const Vector& v = reference.at(k);
        for (const std::size_t node : nodes) {
            const auto i = static_cast<Eigen::Index>(node);
            if (i >= v.size()) throw InvalidParameter("write_bounds_csv: node out of range");
            os << k << ',' << node + 1 << ',' << v[i] << ',' << b.lb.states[j][i] << ','
               << b.ub.states[j][i] << ',' << b.ub1.states[j][i] << ',' << b.ub2.states[j][i]
               << '\n';
        }
    }
}

}  // namespace nimfa::io
