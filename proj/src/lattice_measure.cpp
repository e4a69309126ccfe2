#include "mclaims/lattice_measure.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mclaims/error.hpp"

namespace mclaims {

double LatticeMeasure::mass() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

LatticeMeasure LatticeMeasure::on_window(std::int64_t wlo, std::int64_t whi) const {
    LatticeMeasure out(wlo, std::vector<double>(static_cast<std::size_t>(std::max<std::int64_t>(0, whi - wlo)), 0.0));
    const std::int64_t a = std::max(wlo, lo()), b = std::min(whi, hi());
    for (std::int64_t k = a; k < b; ++k) out.weights[static_cast<std::size_t>(k - wlo)] = at(k);
    return out;
}

LatticeMeasure LatticeMeasure::trimmed(double tol) const {
    std::size_t first = 0, last = weights.size();
    while (first < last && std::abs(weights[first]) <= tol) ++first;
    while (last > first && std::abs(weights[last - 1]) <= tol) --last;
    return {offset + static_cast<std::int64_t>(first),
            std::vector<double>(weights.begin() + static_cast<std::ptrdiff_t>(first),
                                weights.begin() + static_cast<std::ptrdiff_t>(last))};
}

namespace {

LatticeMeasure combine(const LatticeMeasure& a, const LatticeMeasure& b, double sb) {
    if (a.empty()) return sb * b;
    if (b.empty()) return a;
    const std::int64_t lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
    LatticeMeasure out = a.on_window(lo, hi);
    for (std::int64_t k = b.lo(); k < b.hi(); ++k) out.weights[static_cast<std::size_t>(k - lo)] += sb * b.at(k);
    return out;
}

}  // namespace

LatticeMeasure operator+(const LatticeMeasure& a, const LatticeMeasure& b) { return combine(a, b, 1.0); }
LatticeMeasure operator-(const LatticeMeasure& a, const LatticeMeasure& b) { return combine(a, b, -1.0); }

LatticeMeasure operator*(double s, const LatticeMeasure& m) {
    LatticeMeasure out = m;
    for (double& w : out.weights) w *= s;
    return out;
}

void write_csv(std::ostream& os, const LatticeMeasure& m) {
    os << "k,weight\n" << std::setprecision(17);
    for (std::size_t i = 0; i < m.weights.size(); ++i)
        os << m.offset + static_cast<std::int64_t>(i) << ',' << m.weights[i] << '\n';
}

LatticeMeasure read_csv(std::istream& is) {
    std::vector<std::pair<std::int64_t, double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("k,", 0) == 0) continue;
        const auto comma = line.find(',');
        require(comma != std::string::npos, ErrorCode::config, "malformed measure row: " + line);
        rows.emplace_back(std::stoll(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    if (rows.empty()) return {};
    std::sort(rows.begin(), rows.end());
    LatticeMeasure m(rows.front().first,
                     std::vector<double>(static_cast<std::size_t>(rows.back().first - rows.front().first + 1), 0.0));
    for (const auto& [k, w] : rows) m.weights[static_cast<std::size_t>(k - m.offset)] += w;
    return m;
}

nlohmann::json to_json(const LatticeMeasure& m) { return {{"offset", m.offset}, {"weights", m.weights}}; }

LatticeMeasure measure_from_json(const nlohmann::json& j) {
    return {j.at("offset").get<std::int64_t>(), j.at("weights").get<std::vector<double>>()};
}

}  // namespace mclaims
