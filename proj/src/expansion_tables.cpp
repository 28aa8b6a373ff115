// SPDX-License-Identifier: Apache-2.0
#include "boolvox/expansion_tables.hpp"

#include "boolvox/errors.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace boolvox {

RadiusLaw RadiusLaw::constant(double r) {
    if (!(r > 0) || !std::isfinite(r)) throw ConfigError("radius must be positive and finite");
    return RadiusLaw(Kind::Constant, r, r);
}

RadiusLaw RadiusLaw::uniform(double r_min, double r_max) {
    if (!(r_min > 0) || !std::isfinite(r_max) || !(r_max > r_min)) {
        throw ConfigError("uniform radius law needs 0 < r_min < r_max < inf");
    }
    return RadiusLaw(Kind::Uniform, r_min, r_max);
}

namespace {

double parse_number(std::string_view text) {
    double value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) throw ConfigError("not a number: '" + std::string(text) + "'");
    return value;
}

}  // namespace

RadiusLaw RadiusLaw::parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        parts.push_back(text.substr(start, colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    if (parts[0] == "const" && parts.size() == 2) return constant(parse_number(parts[1]));
    if (parts[0] == "uniform" && parts.size() == 3) return uniform(parse_number(parts[1]), parse_number(parts[2]));
    throw ConfigError("radius law must be const:R or uniform:RMIN:RMAX, got '" + std::string(text) + "'");
}

double RadiusLaw::moment(int k) const {
    if (kind_ == Kind::Constant) return std::pow(r_min_, k);
    return (std::pow(r_max_, k + 1) - std::pow(r_min_, k + 1)) / ((k + 1) * (r_max_ - r_min_));
}

std::string RadiusLaw::to_string() const {
    std::ostringstream out;
    out.precision(17);
    if (kind_ == Kind::Constant) {
        out << "const:" << r_min_;
    } else {
        out << "uniform:" << r_min_ << ':' << r_max_;
    }
    return out.str();
}

BallModelParams::BallModelParams(double gamma_, RadiusLaw radius_) : gamma(gamma_), radius(radius_) {
    if (!(gamma >= 0) || !std::isfinite(gamma)) throw ConfigError("intensity gamma must be finite and >= 0");
}

Row8d b_targets(int q) {
    Row8d b = Row8d::Zero();
    switch (q) {
        case 3:
            b << 1, -1, 0, 0, 0, 0, 0, 0;
            break;
        case 2:
            b(2) = -2;
            break;
        case 1:
            b(3) = -2;
            b(4) = -std::numbers::pi;
            break;
        case 0:
            b(5) = -1;
            b(6) = -2;
            b(7) = -std::numbers::pi;
            break;
        default:
            throw ConfigError("q must be in 0..3");
    }
    return b;
}

Row8d geometry_row(VertexSet white) {
    const auto poly = convex_hull<double>(white);
    const auto v = intrinsic_volumes(poly);
    const double v13 = power_volume_v13(poly);
    Row8d row;
    row << 0, 1, v.v1, v.v2, v.v1 * v.v1, v.v3 - std::numbers::pi * v13, v.v1 * v.v2, v.v1 * v.v1 * v.v1;
    return row;
}

ExpansionTables::ExpansionTables() {
    const auto& table = ClassTable::instance();
    for (ClassId j = 1; j <= kNumClasses; ++j) {
        p_.row(j - 1) = geometry_row(table.representative(j).white());
        d_(j - 1) = table.multiplicity(j);
    }
    q_ = table.inclusion_exclusion().cast<double>() * p_;

    // the empty white set never misses: its row is (1, 0, ..., 0)
    Eigen::Matrix<double, kNumClassesWithEmpty, kExpansionOrder> p_ext;
    p_ext.topRows<kNumClasses>() = p_;
    p_ext.row(kNumClasses) = Row8d::Unit(0);
    q_all_black_ = table.extended_inclusion_exclusion().row(kNumClasses).cast<double>() * p_ext;
}

const ExpansionTables& ExpansionTables::instance() {
    static const ExpansionTables tables;
    return tables;
}

Row8d ExpansionTables::p_row(ClassId j) const {
    if (j < 1 || j > kNumClasses) throw ConfigError("class id must be in 1..21");
    return p_.row(j - 1);
}

Row8d ExpansionTables::q_row(ClassId j) const {
    if (j == kNumClassesWithEmpty) return q_all_black_;
    if (j < 1 || j > kNumClasses) throw ConfigError("class id must be in 1..22");
    return q_.row(j - 1);
}

CConstants ExpansionTables::c_constants(ClassId j) const {
    if (j == kNumClassesWithEmpty) throw ConfigError("c constants are defined for classes 1..21");
    const Row8d q = q_row(j);
    return {-q(2) / 2, -q(3) / 2, q(4) / 4};
}

Row8d p_row(ClassId j) { return ExpansionTables::instance().p_row(j); }

ExpansionMatrix q_matrix() { return ExpansionTables::instance().q(); }

CConstants c_constants(ClassId j) { return ExpansionTables::instance().c_constants(j); }

double predict_hit_miss(ClassId j, const BallModelParams& params, double a) {
    if (j < 1 || j > kNumClasses) throw ConfigError("class id must be in 1..21");
    if (!(a >= 0)) throw ConfigError("grid width must be >= 0");
    constexpr double slack = 1e-12;
    double value = ExpansionTables::instance().q_row(j).dot(v_of_a(params, a));
    if (value < -slack || value > 1.0 + slack) {
        std::ostringstream msg;
        msg << "truncated expansion for class " << j << " at a = " << a << " is " << value
            << ", outside [0, 1]";
        throw ExpansionRangeError(msg.str(), value);
    }
    return std::clamp(value, 0.0, 1.0);
}

}  // namespace boolvox
