// SPDX-License-Identifier: Apache-2.0
#include "boolvox/weights.hpp"

#include "boolvox/errors.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace boolvox {

WeightVector WeightVector::zeros(int q) {
    if (q < 0 || q > 3) throw ConfigError("q must be in 0..3");
    WeightVector out;
    out.q = q;
    return out;
}

WeightVector WeightVector::volume() {
    WeightVector out = zeros(3);
    out(kNumClassesWithEmpty) = 1.0;
    return out;
}

Row8d wdq_row(const WeightVector& w) {
    const auto& tables = ExpansionTables::instance();
    Row8d row = Row8d::Zero();
    if (w.q == 3) {
        // point counting: P(x_0 in Z) = 1 - e^{-x}, P(x_0 not in Z) = e^{-x}
        row(0) = w(kNumClassesWithEmpty);
        row(1) = w(1) - w(kNumClassesWithEmpty);
        return row;
    }
    for (ClassId j = 1; j <= kNumClasses; ++j) {
        if (w(j) != 0.0) row += w(j) * tables.multiplicities()(j - 1) * tables.q().row(j - 1);
    }
    if (w(kNumClassesWithEmpty) != 0.0) row += w(kNumClassesWithEmpty) * tables.q_row(kNumClassesWithEmpty);
    return row;
}

Row8d verify_weights(const WeightVector& w) { return wdq_row(w) - b_targets(w.q); }

namespace {

constexpr int kFirstEquation = 2;
constexpr int kNumEquations = 6;

std::vector<ClassId> free_classes(const std::optional<std::vector<ClassId>>& support) {
    std::array<bool, kNumClassesWithEmpty + 1> allowed{};
    if (support) {
        for (ClassId j : *support) {
            if (j < 1 || j > kNumClassesWithEmpty) throw ConfigError("support class id out of range: " + std::to_string(j));
            allowed[j] = true;
        }
    } else {
        allowed.fill(true);
    }
    std::vector<ClassId> out;
    // w_1 and w_22 stay pinned at zero
    for (ClassId j = 2; j <= kNumClasses; ++j) {
        if (allowed[j]) out.push_back(j);
    }
    return out;
}

Eigen::MatrixXd system_matrix(const std::vector<ClassId>& classes) {
    const auto& tables = ExpansionTables::instance();
    Eigen::MatrixXd a(kNumEquations, static_cast<Eigen::Index>(classes.size()));
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const ClassId j = classes[c];
        a.col(static_cast<Eigen::Index>(c)) =
            tables.multiplicities()(j - 1) * tables.q().row(j - 1).segment<kNumEquations>(kFirstEquation).transpose();
    }
    return a;
}

}  // namespace

WeightVector solve_for_target(int q, const Row8d& target, const std::optional<std::vector<ClassId>>& support,
                              double tolerance) {
    WeightVector out = WeightVector::zeros(q);
    const auto classes = free_classes(support);
    if (!classes.empty()) {
        const Eigen::MatrixXd a = system_matrix(classes);
        const Eigen::VectorXd rhs = target.segment<kNumEquations>(kFirstEquation).transpose();
        const Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(rhs);
        for (std::size_t c = 0; c < classes.size(); ++c) out(classes[c]) = x(static_cast<Eigen::Index>(c));
    }
    const double residual = (wdq_row(out) - target).cwiseAbs().maxCoeff();
    if (!(residual <= tolerance)) {
        std::ostringstream msg;
        msg << "weight equations for q = " << q << " are infeasible on the given support (max residual "
            << residual << ")";
        throw InfeasibleError(msg.str(), residual);
    }
    return out;
}

WeightVector solve_weights(int q, const std::optional<std::vector<ClassId>>& support) {
    if (q < 0 || q > 2) throw ConfigError("solve_weights needs q in 0..2");
    return solve_for_target(q, b_targets(q), support);
}

Eigen::MatrixXd homogeneous_solutions(const std::optional<std::vector<ClassId>>& support) {
    const auto classes = free_classes(support);
    if (classes.empty()) return Eigen::MatrixXd(kNumClassesWithEmpty, 0);
    const Eigen::MatrixXd a = system_matrix(classes);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    svd.setThreshold(1e-12);
    const Eigen::Index rank = svd.rank();
    const Eigen::Index n = a.cols();
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(kNumClassesWithEmpty, n - rank);
    for (Eigen::Index k = 0; k < n - rank; ++k) {
        for (std::size_t c = 0; c < classes.size(); ++c) {
            basis(classes[c] - 1, k) = svd.matrixV()(static_cast<Eigen::Index>(c), rank + k);
        }
    }
    return basis;
}

double predict_estimator_mean(const WeightVector& w, const BallModelParams& params, double a) {
    if (!(a > 0)) throw ConfigError("grid width must be positive");
    if (w.q == 3) {
        const double v3 = miles_values(params)(3);
        return w(kNumClassesWithEmpty) * v3 + w(1) * (1.0 - v3);
    }
    if (w(kNumClassesWithEmpty) != 0.0) {
        throw ConfigError("the expansion does not cover a nonzero all-black weight for q < 3");
    }
    return std::pow(a, w.q - 3) * wdq_row(w).dot(v_of_a(params, a));
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

WeightVector parse_weights(std::istream& in, int q) {
    WeightVector out = WeightVector::zeros(q);
    std::array<bool, kNumClassesWithEmpty + 1> seen{};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = trim(body);
        if (body.empty()) continue;

        const auto comma = body.find(',');
        if (comma == std::string_view::npos) throw WeightFileError("expected 'class_id,weight'", line_no);
        const auto id_text = trim(body.substr(0, comma));
        const auto value_text = trim(body.substr(comma + 1));

        int id = 0;
        auto [id_end, id_ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
        if (id_ec != std::errc() || id_end != id_text.data() + id_text.size()) {
            throw WeightFileError("bad class id '" + std::string(id_text) + "'", line_no);
        }
        if (id < 1 || id > kNumClassesWithEmpty) {
            throw WeightFileError("class id " + std::to_string(id) + " outside 1..22", line_no);
        }
        double value = 0;
        auto [v_end, v_ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
        if (v_ec != std::errc() || v_end != value_text.data() + value_text.size() || !std::isfinite(value)) {
            throw WeightFileError("bad weight '" + std::string(value_text) + "'", line_no);
        }
        if (seen[id]) throw WeightFileError("class " + std::to_string(id) + " given twice", line_no);
        seen[id] = true;
        out(id) = value;
    }
    for (ClassId j = 1; j <= kNumClassesWithEmpty; ++j) {
        if (!seen[j]) throw WeightFileError("missing class " + std::to_string(j), 0);
    }
    return out;
}

void write_weights(std::ostream& out, const WeightVector& w) {
    out << "# class_id,weight (q = " << w.q << ")\n";
    const auto old_precision = out.precision(17);
    for (ClassId j = 1; j <= kNumClassesWithEmpty; ++j) out << j << ',' << w(j) << '\n';
    out.precision(old_precision);
}

WeightVector load_weights(const std::filesystem::path& path, int q) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open weight file " + path.string());
    return parse_weights(in, q);
}

void save_weights(const WeightVector& w, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write weight file " + path.string());
    write_weights(out, w);
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace boolvox
