#ifndef MCLAIMS_LATTICE_MEASURE_HPP
#define MCLAIMS_LATTICE_MEASURE_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <json.hpp>

namespace mclaims {

/// Finite signed measure on the integers: weights[i] sits at offset + i.
struct LatticeMeasure {
    std::int64_t offset = 0;
    std::vector<double> weights;

    LatticeMeasure() = default;
    LatticeMeasure(std::int64_t off, std::vector<double> w) : offset(off), weights(std::move(w)) {}

    /// Unit atom at k.
    static LatticeMeasure atom(std::int64_t k, double mass = 1.0) { return {k, {mass}}; }

    std::int64_t lo() const { return offset; }
    /// One past the last supported point.
    std::int64_t hi() const { return offset + static_cast<std::int64_t>(weights.size()); }
    bool empty() const { return weights.empty(); }

    /// M{k}; zero outside the stored window.
    double at(std::int64_t k) const {
        if (k < lo() || k >= hi()) return 0.0;
        return weights[static_cast<std::size_t>(k - offset)];
    }

    double mass() const;

    /// Same measure re-expressed on [lo, hi), zero padded; mass outside is dropped.
    LatticeMeasure on_window(std::int64_t lo, std::int64_t hi) const;

    /// Drop leading/trailing weights with |w| <= tol.
    LatticeMeasure trimmed(double tol = 0.0) const;
};

LatticeMeasure operator+(const LatticeMeasure& a, const LatticeMeasure& b);
LatticeMeasure operator-(const LatticeMeasure& a, const LatticeMeasure& b);
LatticeMeasure operator*(double s, const LatticeMeasure& m);

/// "k,weight" rows with 17 significant digits; lines starting with '#' are header.
void write_csv(std::ostream& os, const LatticeMeasure& m);
LatticeMeasure read_csv(std::istream& is);

nlohmann::json to_json(const LatticeMeasure& m);
LatticeMeasure measure_from_json(const nlohmann::json& j);

}  // namespace mclaims

#endif
