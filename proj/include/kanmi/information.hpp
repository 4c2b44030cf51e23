#pragma once

// Normalized mutual information between labelings, from raw label vectors
// and from histograms alone.
//
// NMI(a, b) = (2/n) * sum_h sum_g n_hg * log_{k_a*k_b}( n_hg * n / (n_h * n_g) )
//
// Empty cells contribute nothing. When both labelings have a single cluster
// the log base is 1; the partitions are then identical and NMI is 1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kanmi/core.hpp"

namespace kanmi::information {

/// Co-occurrence counts of two labelings; rows follow `a`, columns `b`.
struct ContingencyTable {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> counts;  // rows x cols, row-major
    std::vector<std::size_t> row_sums;
    std::vector<std::size_t> col_sums;
    std::size_t total = 0;

    std::size_t at(std::size_t h, std::size_t g) const { return counts[h * cols + g]; }

    ContingencyTable transposed() const {
        ContingencyTable t;
        t.rows = cols;
        t.cols = rows;
        t.counts.resize(counts.size());
        for (std::size_t h = 0; h < rows; ++h)
            for (std::size_t g = 0; g < cols; ++g) t.counts[g * rows + h] = at(h, g);
        t.row_sums = col_sums;
        t.col_sums = row_sums;
        t.total = total;
        return t;
    }

    friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

inline ContingencyTable contingency(const Labeling& a, const Labeling& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("contingency: labelings have lengths " + std::to_string(a.size()) +
                                    " and " + std::to_string(b.size()));
    ContingencyTable t;
    t.rows = a.num_labels();
    t.cols = b.num_labels();
    t.counts.assign(t.rows * t.cols, 0);
    t.row_sums.assign(t.rows, 0);
    t.col_sums.assign(t.cols, 0);
    t.total = a.size();
    for (std::size_t j = 0; j < a.size(); ++j) {
        ++t.counts[a[j] * t.cols + b[j]];
        ++t.row_sums[a[j]];
        ++t.col_sums[b[j]];
    }
    return t;
}

namespace detail {

/// n_hg * ln(n_hg * n / (n_h * n_g)); the ratio is formed from exact integer
/// products so the value does not depend on which labeling is the row side.
inline double cell_term(std::size_t n_hg, std::size_t n, std::size_t n_h, std::size_t n_g) {
    if (n_hg == 0) return 0.0;
    const double num = static_cast<double>(static_cast<std::uint64_t>(n_hg) * n);
    const double den = static_cast<double>(static_cast<std::uint64_t>(n_h) * n_g);
    return static_cast<double>(n_hg) * std::log(num / den);
}

inline double normalize(double sum, std::size_t n, std::size_t k_a, std::size_t k_b) {
    const std::size_t base = k_a * k_b;
    if (base <= 1) return 1.0;
    return 2.0 / static_cast<double>(n) * sum / std::log(static_cast<double>(base));
}

}  // namespace detail

/// NMI from a contingency table.
///
/// Terms are summed in ascending order, so a table and its transpose give
/// bitwise-identical results.
inline double nmi(const ContingencyTable& t) {
    if (t.total == 0) throw std::invalid_argument("nmi: empty labelings");
    std::vector<double> terms;
    terms.reserve(t.counts.size());
    for (std::size_t h = 0; h < t.rows; ++h)
        for (std::size_t g = 0; g < t.cols; ++g)
            if (t.at(h, g) > 0) terms.push_back(detail::cell_term(t.at(h, g), t.total, t.row_sums[h], t.col_sums[g]));
    std::sort(terms.begin(), terms.end());
    double sum = 0.0;
    for (double x : terms) sum += x;
    return detail::normalize(sum, t.total, t.rows, t.cols);
}

inline double nmi(const Labeling& a, const Labeling& b) { return nmi(contingency(a, b)); }

/// NMI between a k-cluster labeling and the partition induced by one
/// attribute, using only that attribute's per-cluster histograms, the
/// cluster sizes and the whole-dataset histogram of the attribute.
inline double nmi_from_histograms(std::span<const Histogram> cluster_hists,
                                  std::span<const std::size_t> cluster_sizes,
                                  const Histogram& attr_hist, std::size_t n, std::size_t k) {
    if (cluster_hists.size() != k || cluster_sizes.size() != k)
        throw std::logic_error("nmi_from_histograms: expected " + std::to_string(k) + " clusters");
    if (attr_hist.total() != n)
        throw std::logic_error("nmi_from_histograms: attribute histogram total " +
                               std::to_string(attr_hist.total()) + " != n = " + std::to_string(n));
    std::size_t size_sum = 0;
    for (std::size_t h = 0; h < k; ++h) {
        if (cluster_hists[h].total() != cluster_sizes[h])
            throw std::logic_error("nmi_from_histograms: cluster " + std::to_string(h) +
                                   " histogram total disagrees with its size");
        size_sum += cluster_sizes[h];
    }
    if (size_sum != n) throw std::logic_error("nmi_from_histograms: cluster sizes do not sum to n");
    if (n == 0) throw std::invalid_argument("nmi_from_histograms: n = 0");

    double sum = 0.0;
    for (std::size_t h = 0; h < k; ++h)
        for (auto [v, f] : cluster_hists[h].entries())
            sum += detail::cell_term(f, n, cluster_sizes[h], attr_hist.count(v));
    return detail::normalize(sum, n, k, attr_hist.size());
}

/// Mean NMI between a candidate labeling and each base labeling.
inline double anmi(std::span<const Labeling> base, const Labeling& candidate) {
    if (base.empty()) throw std::invalid_argument("anmi: empty base labeling set");
    double sum = 0.0;
    for (const Labeling& b : base) sum += nmi(candidate, b);
    return sum / static_cast<double>(base.size());
}

}  // namespace kanmi::information
