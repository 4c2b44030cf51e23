#pragma once

// Evaluation against known classes, the Squeezer one-pass baseline, a
// synthetic categorical data generator and the per-k error benchmark.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kanmi/core.hpp"
#include "kanmi/information.hpp"
#include "kanmi/kanmi.hpp"

namespace kanmi::experiments {

struct DominantClass {
    LabelId class_id = 0;
    std::size_t count = 0;  // a_i

    friend bool operator==(const DominantClass&, const DominantClass&) = default;
};

/// Clustering accuracy: each cluster is credited with the records of its
/// most frequent class.
struct EvaluationReport {
    std::size_t k = 0;
    std::size_t n = 0;
    double accuracy = 0.0;
    double error = 0.0;
    std::vector<DominantClass> per_cluster_dominant;
    information::ContingencyTable confusion;  // clusters x classes

    friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

/// Two clusters may share a dominant class. Ties between classes go to the
/// lowest class id.
inline EvaluationReport accuracy(const Labeling& labels, const Labeling& classes) {
    if (labels.size() != classes.size())
        throw std::invalid_argument("accuracy: " + std::to_string(labels.size()) + " labels vs " +
                                    std::to_string(classes.size()) + " classes");
    if (labels.size() == 0) throw std::invalid_argument("accuracy: empty labelings");
    EvaluationReport rep;
    rep.confusion = information::contingency(labels, classes);
    rep.k = labels.num_labels();
    rep.n = labels.size();
    std::size_t credited = 0;
    for (std::size_t h = 0; h < rep.confusion.rows; ++h) {
        DominantClass d;
        for (std::size_t g = 0; g < rep.confusion.cols; ++g) {
            if (rep.confusion.at(h, g) > d.count) {
                d.count = rep.confusion.at(h, g);
                d.class_id = static_cast<LabelId>(g);
            }
        }
        credited += d.count;
        rep.per_cluster_dominant.push_back(d);
    }
    rep.accuracy = static_cast<double>(credited) / static_cast<double>(rep.n);
    rep.error = 1.0 - rep.accuracy;
    return rep;
}

/// Squeezer: one pass; the first record opens cluster 0, each later record
/// joins the most similar existing cluster (d4 against the cluster's
/// histograms) if that similarity reaches `threshold`, otherwise it opens a
/// new cluster.
inline Labeling squeezer(const Dataset& ds, double threshold) {
    if (!(threshold >= 0.0)) throw std::invalid_argument("squeezer: threshold must be >= 0");
    const std::size_t r = ds.num_attributes();
    const auto domains = ds.domain_sizes();
    std::vector<HistogramSet> clusters;
    std::vector<LabelId> labels(ds.num_records(), 0);
    for (std::size_t j = 0; j < ds.num_records(); ++j) {
        const Record rec = ds.record(j);
        std::size_t best = clusters.size();
        double best_sim = -1.0;
        for (std::size_t l = 0; l < clusters.size(); ++l) {
            std::size_t matches = 0;
            for (std::size_t i = 0; i < r; ++i) matches += clusters[l][i].count(rec[i]);
            const double sim = static_cast<double>(matches) / static_cast<double>(clusters[l].total());
            if (sim > best_sim) {
                best_sim = sim;
                best = l;
            }
        }
        if (best == clusters.size() || best_sim < threshold) {
            best = clusters.size();
            clusters.push_back(HistogramSet::empty_for(domains));
        }
        clusters[best].add(rec);
        labels[j] = static_cast<LabelId>(best);
    }
    return Labeling(std::move(labels));
}

/// Squeezer with the threshold searched so that it yields `k` clusters.
/// Falls back to the threshold whose cluster count is closest to k
/// (preferring more clusters) when k is not attainable exactly.
struct SqueezerFit {
    Labeling labels;
    double threshold = 0.0;
};

inline SqueezerFit squeezer_for_k(const Dataset& ds, std::size_t k, int iterations = 60) {
    if (k < 1) throw std::invalid_argument("squeezer_for_k: k must be >= 1");
    double lo = 0.0;
    double hi = static_cast<double>(ds.num_attributes()) + 1.0;
    SqueezerFit best{squeezer(ds, lo), lo};
    auto gap = [k](const Labeling& l) {
        const auto c = l.num_labels();
        return c >= k ? 2 * (c - k) : 2 * (k - c) + 1;
    };
    for (int it = 0; it < iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        Labeling l = squeezer(ds, mid);
        if (gap(l) < gap(best.labels)) best = {l, mid};
        if (l.num_labels() == k) return {std::move(l), mid};
        if (l.num_labels() < k)
            lo = mid;
        else
            hi = mid;
    }
    return best;
}

struct GeneratorSpec {
    std::size_t rows = 1000;
    std::size_t attributes = 10;
    std::size_t classes = 10;
    std::size_t values_per_attribute = 10;
    /// Probability of the class's preferred value for each attribute.
    double skew = 0.6;
    std::uint64_t seed = 5;

    void validate() const {
        if (rows < 1) throw std::invalid_argument("generator: rows must be >= 1");
        if (classes < 1) throw std::invalid_argument("generator: classes must be >= 1");
        if (rows < classes) throw std::invalid_argument("generator: rows must be >= classes");
        if (attributes < 1) throw std::invalid_argument("generator: attributes must be >= 1");
        if (values_per_attribute < 2) throw std::invalid_argument("generator: values per attribute must be >= 2");
        if (!(skew > 0.0 && skew <= 1.0)) throw std::invalid_argument("generator: skew must lie in (0, 1]");
    }
};

/// Rows of (attribute tokens..., class token) from a class-conditional
/// skewed multinomial.
///
/// Each class c prefers value perm_i[c mod p] on attribute i, where perm_i is
/// a seeded permutation of the p values, so classes have distinct preferred
/// values on every attribute whenever c <= p. A record takes the preferred
/// value with probability `skew` and otherwise one of the other p-1 values
/// uniformly. Classes are drawn uniformly.
inline std::vector<std::vector<std::string>> generate_rows(const GeneratorSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    const std::size_t p = spec.values_per_attribute;
    std::vector<std::vector<std::size_t>> preferred(spec.attributes, std::vector<std::size_t>(spec.classes));
    for (std::size_t i = 0; i < spec.attributes; ++i) {
        std::vector<std::size_t> perm(p);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t c = 0; c < spec.classes; ++c) preferred[i][c] = perm[c % p];
    }
    std::uniform_int_distribution<std::size_t> pick_class(0, spec.classes - 1);
    std::uniform_int_distribution<std::size_t> pick_other(0, p - 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<std::vector<std::string>> rows;
    rows.reserve(spec.rows);
    for (std::size_t j = 0; j < spec.rows; ++j) {
        const std::size_t c = pick_class(rng);
        std::vector<std::string> row;
        row.reserve(spec.attributes + 1);
        for (std::size_t i = 0; i < spec.attributes; ++i) {
            std::size_t v = preferred[i][c];
            if (spec.skew < 1.0 && unit(rng) >= spec.skew) {
                const std::size_t other = pick_other(rng);
                v = other < v ? other : other + 1;
            }
            row.push_back("v" + std::to_string(v));
        }
        row.push_back("c" + std::to_string(c));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// generate_rows as a Dataset with the class column attached as ground truth.
inline Dataset generate(const GeneratorSpec& spec) {
    auto rows = generate_rows(spec);
    std::vector<std::string> classes;
    classes.reserve(rows.size());
    for (auto& row : rows) {
        classes.push_back(std::move(row.back()));
        row.pop_back();
    }
    Dataset ds = Dataset::from_tokens(rows);
    Labeling truth = Labeling::from_raw(classes);
    std::vector<std::string> names(truth.num_labels());
    for (std::size_t j = 0; j < classes.size(); ++j) names[truth[j]] = classes[j];
    ds.set_ground_truth(std::move(truth), std::move(names));
    return ds;
}

enum class Algorithm { kanmi, squeezer };

inline std::string_view algorithm_name(Algorithm a) { return a == Algorithm::kanmi ? "k-ANMI" : "Squeezer"; }

inline Algorithm parse_algorithm(std::string_view s) {
    if (s == "kanmi" || s == "k-anmi" || s == "k-ANMI") return Algorithm::kanmi;
    if (s == "squeezer" || s == "Squeezer") return Algorithm::squeezer;
    throw std::invalid_argument("unknown algorithm '" + std::string(s) + "' (expected kanmi or squeezer)");
}

struct BenchmarkRow {
    std::size_t k = 0;             // requested
    std::size_t clusters = 0;      // obtained
    double error = 0.0;
    double seconds = 0.0;
    double anmi = 0.0;             // k-ANMI only
    std::size_t sweeps = 0;        // k-ANMI only
    double threshold = 0.0;        // Squeezer only
};

struct BenchmarkTable {
    Algorithm algorithm = Algorithm::kanmi;
    std::vector<BenchmarkRow> rows;
    double average_error = 0.0;
};

/// One run per k; the average error is the mean over the k values.
inline BenchmarkTable benchmark(const Dataset& ds, Algorithm algorithm, const std::vector<std::size_t>& ks,
                                const KanmiConfig& base = {}) {
    if (!ds.ground_truth()) throw std::invalid_argument("benchmark: dataset has no ground truth");
    if (ks.empty()) throw std::invalid_argument("benchmark: empty k list");
    BenchmarkTable table;
    table.algorithm = algorithm;
    double sum = 0.0;
    for (std::size_t k : ks) {
        BenchmarkRow row;
        row.k = k;
        const auto start = std::chrono::steady_clock::now();
        Labeling labels;
        if (algorithm == Algorithm::kanmi) {
            KanmiConfig cfg = base;
            cfg.k = k;
            KanmiResult res = run(ds, cfg);
            row.anmi = res.final_anmi;
            row.sweeps = res.sweeps_run;
            labels = std::move(res.labels);
        } else {
            SqueezerFit fit = squeezer_for_k(ds, k);
            row.threshold = fit.threshold;
            labels = std::move(fit.labels);
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        row.clusters = labels.num_labels();
        row.error = accuracy(labels, *ds.ground_truth()).error;
        sum += row.error;
        table.rows.push_back(row);
    }
    table.average_error = sum / static_cast<double>(ks.size());
    return table;
}

/// Published average clustering errors over k = 2..9 for comparison columns.
/// GAClust and ccdByEnsemble are not implemented here.
struct ReferenceErrors {
    std::string_view dataset;
    double squeezer;
    double gaclust;
    double ccd_by_ensemble;
    double kanmi;
};

inline constexpr ReferenceErrors kReferenceErrors[] = {
    {"votes", 0.163, 0.136, 0.115, 0.092},
    {"mushroom", 0.206, 0.393, 0.315, 0.165},
    {"cancer", 0.091, 0.117, 0.071, 0.039},
};

inline const ReferenceErrors* find_reference(std::string_view dataset) {
    for (const auto& ref : kReferenceErrors)
        if (ref.dataset == dataset) return &ref;
    return nullptr;
}

}  // namespace kanmi::experiments
