#pragma once

// Mismatch-count dissimilarities between records, record sets and histograms.

#include <cstddef>
#include <span>
#include <stdexcept>

#include "kanmi/core.hpp"

namespace kanmi::metrics {

constexpr int delta(ValueId x, ValueId y) { return x == y ? 0 : 1; }

/// Hamming distance: number of attributes on which x and y differ.
inline std::size_t d1(Record x, Record y) {
    if (x.size() != y.size()) throw std::invalid_argument("d1: records have different arity");
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mismatches += static_cast<std::size_t>(delta(x[i], y[i]));
    return mismatches;
}

/// Mean d1 between y and every record of the set.
inline double d2(std::span<const Record> records, Record y) {
    if (records.empty()) throw std::invalid_argument("d2: empty record set");
    std::size_t sum = 0;
    for (Record x : records) sum += d1(x, y);
    return static_cast<double>(sum) / static_cast<double>(records.size());
}

/// Frequency mass of h that disagrees with y_i.
inline std::size_t mismatch_mass(const Histogram& h, ValueId y) {
    std::size_t mass = 0;
    for (auto [v, f] : h.entries()) mass += static_cast<std::size_t>(f) * static_cast<std::size_t>(delta(v, y));
    return mass;
}

/// Frequency mass of h that agrees with y_i; a single lookup.
inline std::size_t match_mass(const Histogram& h, ValueId y) { return h.count(y); }

/// d2 evaluated on histograms alone: mismatch mass summed over attributes,
/// divided by the histogram total.
inline double d3(const HistogramSet& hs, Record y) {
    if (hs.total() == 0) throw std::invalid_argument("d3: histogram total is zero");
    if (y.size() != hs.num_attributes()) throw std::invalid_argument("d3: record arity mismatch");
    std::size_t sum = 0;
    for (std::size_t i = 0; i < y.size(); ++i) sum += mismatch_mass(hs[i], y[i]);
    return static_cast<double>(sum) / static_cast<double>(hs.total());
}

/// Matched-frequency similarity in [0, r]; d3 + d4 = r.
///
/// Larger means closer. Only one lookup per attribute is needed, which is
/// why cluster assignment uses this form rather than d3.
inline double d4(const HistogramSet& hs, Record y) {
    if (hs.total() == 0) throw std::invalid_argument("d4: histogram total is zero");
    if (y.size() != hs.num_attributes()) throw std::invalid_argument("d4: record arity mismatch");
    std::size_t sum = 0;
    for (std::size_t i = 0; i < y.size(); ++i) sum += match_mass(hs[i], y[i]);
    return static_cast<double>(sum) / static_cast<double>(hs.total());
}

}  // namespace kanmi::metrics
