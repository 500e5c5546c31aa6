#ifndef EAQTURBO_SPECTRUM_HPP
#define EAQTURBO_SPECTRUM_HPP

#include <optional>

#include "eaqturbo/state_diagram.hpp"
#include "eaqturbo/weight_poly.hpp"

namespace eaqturbo {

/// Distance spectrum F(w) up to a truncation degree: the number of
/// admissible paths of physical weight w and positive logical weight
/// beginning and ending in zero-cycle memory states.
struct DistanceSpectrum {
    int truncation = 0;
    std::vector<BigUint> counts;  // F(0..truncation)

    /// Smallest w with F(w) > 0; absent if the spectrum is empty up to the
    /// truncation degree.
    std::optional<int> free_distance() const;
};

/// Weight adjacency matrix: entry (i,j) sums x^{phys_weight} over edges
/// i -> j, excluding every edge lying on a zero physical-weight cycle.
/// Dense; intended for small diagrams.
std::vector<std::vector<WeightPoly>> weight_adjacency(const StateDiagram& d, int truncation);

/// Truncated power-sum computation of the distance spectrum via
/// B = sum_{i>=1} A^i and the zero-logical-weight correction.
DistanceSpectrum distance_spectrum(const StateDiagram& d, int truncation);

std::optional<int> free_distance(const StateDiagram& d, int truncation);

/// Independent validation oracle: depth-first enumeration of all admissible
/// paths with physical weight at most the truncation and positive logical
/// weight. Only for small diagrams (m <= 2, truncation <= 7).
DistanceSpectrum spectrum_oracle(const StateDiagram& d, int truncation);

}  // namespace eaqturbo

#endif
