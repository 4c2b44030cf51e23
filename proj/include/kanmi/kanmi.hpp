#pragma once

// k-ANMI: local search over k-partitions that maximizes the average NMI
// between the partition and the partitions induced by each attribute.
//
// The search state is (r+1)*k histograms' worth of counts: for every
// cluster l and attribute i the histogram CAH(l,i) of that attribute's values
// inside the cluster, plus the whole-dataset histogram AH(i) per attribute.
// The objective is evaluated from these counts only.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kanmi/core.hpp"
#include "kanmi/information.hpp"

namespace kanmi {

struct KanmiConfig {
    std::size_t k = 2;
    std::size_t max_sweeps = 100;
    /// A move is taken only if it raises ANMI by more than this.
    double improvement_epsilon = 1e-12;

    void validate() const {
        if (k < 2) throw std::invalid_argument("k must be at least 2");
        if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be at least 1");
        if (!(improvement_epsilon >= 0.0)) throw std::invalid_argument("improvement_epsilon must be >= 0");
    }
};

struct KanmiResult {
    Labeling labels;
    double final_anmi = 0.0;
    std::size_t sweeps_run = 0;
    /// Entry 0 is the ANMI right after initialization; entry s the ANMI after sweep s.
    std::vector<double> anmi_history;
    std::vector<std::size_t> moves_per_sweep;
};

/// Thrown by evaluate_move/apply_move when the move would leave a cluster empty.
class EmptyClusterMove : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Mutable clustering state: labels, cluster sizes, per-cluster and
/// whole-dataset attribute histograms. The dataset must outlive the state.
class ClusterState {
public:
    /// Seeds cluster l with record l for l < k, then assigns each following
    /// record to the cluster whose histograms match it best (largest d4,
    /// normalized by the cluster's current size; ties go to the lowest id).
    static ClusterState initialize(const Dataset& ds, std::size_t k) {
        if (k < 2) throw std::invalid_argument("k must be at least 2");
        if (ds.num_records() < k)
            throw std::invalid_argument("n < k: " + std::to_string(ds.num_records()) + " records for k = " +
                                        std::to_string(k));
        ClusterState s(ds, k);
        const std::size_t r = ds.num_attributes();
        for (std::size_t j = 0; j < ds.num_records(); ++j) {
            const Record rec = ds.record(j);
            s.attr_hists_.add(rec);
            LabelId target = 0;
            if (j < k) {
                target = static_cast<LabelId>(j);
            } else {
                // Compare matches/size as exact fractions.
                std::size_t best_matches = 0;
                std::size_t best_size = 1;
                for (std::size_t l = 0; l < k; ++l) {
                    std::size_t matches = 0;
                    for (std::size_t i = 0; i < r; ++i) matches += s.cah(l, i).count(rec[i]);
                    if (l == 0 || matches * best_size > best_matches * s.sizes_[l]) {
                        best_matches = matches;
                        best_size = s.sizes_[l];
                        target = static_cast<LabelId>(l);
                    }
                }
            }
            s.labels_[j] = target;
            s.insert(j, target);
        }
        s.finish_setup();
        return s;
    }

    /// Builds the state that corresponds to an explicit label vector.
    ClusterState(const Dataset& ds, const Labeling& labels) : ClusterState(ds, labels.num_labels()) {
        if (labels.size() != ds.num_records())
            throw std::invalid_argument("label vector length does not match dataset");
        if (k_ < 1) throw std::invalid_argument("labeling has no clusters");
        for (std::size_t j = 0; j < ds.num_records(); ++j) {
            attr_hists_.add(ds.record(j));
            labels_[j] = labels[j];
            insert(j, labels[j]);
        }
        finish_setup();
    }

    std::size_t n() const { return ds_->num_records(); }
    std::size_t r() const { return ds_->num_attributes(); }
    std::size_t k() const { return k_; }
    const Dataset& dataset() const { return *ds_; }

    LabelId label(std::size_t j) const { return labels_[j]; }
    const std::vector<LabelId>& labels() const { return labels_; }
    Labeling labeling() const { return Labeling(labels_); }
    std::size_t cluster_size(std::size_t l) const { return sizes_[l]; }
    std::span<const std::size_t> cluster_sizes() const { return sizes_; }

    /// CAH(l, i).
    const Histogram& cluster_histogram(std::size_t l, std::size_t i) const { return cah(l, i); }
    /// CAH(0..k-1, i), contiguous.
    std::span<const Histogram> cluster_histograms_for(std::size_t i) const {
        return {cluster_hists_.data() + i * k_, k_};
    }
    /// AH(i).
    const Histogram& attribute_histogram(std::size_t i) const { return attr_hists_[i]; }
    const HistogramSet& attribute_histograms() const { return attr_hists_; }

    /// ANMI computed attribute by attribute from the histograms.
    double anmi() const {
        double sum = 0.0;
        for (std::size_t i = 0; i < r(); ++i)
            sum += information::nmi_from_histograms(cluster_histograms_for(i), sizes_, attr_hists_[i], n(), k_);
        return sum / static_cast<double>(r());
    }

    /// ANMI from the cached per-(cluster, attribute) terms. Agrees with
    /// anmi() up to rounding; this is the value the search compares.
    double objective() const {
        double total = constant_;
        for (std::size_t i = 0; i < r(); ++i) {
            double s = 0.0;
            for (std::size_t l = 0; l < k_; ++l) s += terms_[i * k_ + l];
            total += weights_[i] * s;
        }
        return total;
    }

    /// Whether record j may leave its cluster without emptying it.
    bool can_move(std::size_t j) const { return sizes_[labels_[j]] > 1; }

    /// ANMI after moving record j to `target`. The state is left unchanged:
    /// the move is applied to the 2r affected histograms, measured and reverted.
    double evaluate_move(std::size_t j, LabelId target) {
        const LabelId source = check_move(j, target);
        const Record rec = ds_->record(j);
        shift(rec, source, target);
        double total = constant_;
        for (std::size_t i = 0; i < r(); ++i) {
            double s = 0.0;
            for (std::size_t l = 0; l < k_; ++l) {
                if (l == source || l == target)
                    s += term(l, i);
                else
                    s += terms_[i * k_ + l];
            }
            total += weights_[i] * s;
        }
        shift(rec, target, source);
        return total;
    }

    /// Moves record j to `target` and refreshes the affected cached terms.
    void apply_move(std::size_t j, LabelId target) {
        const LabelId source = check_move(j, target);
        shift(ds_->record(j), source, target);
        labels_[j] = target;
        for (std::size_t i = 0; i < r(); ++i) {
            terms_[i * k_ + source] = term(source, i);
            terms_[i * k_ + target] = term(target, i);
        }
    }

    /// True when every histogram and size equals a from-scratch rebuild
    /// from the current labels.
    bool consistent_with_labels() const {
        ClusterState fresh(*ds_, k_);
        for (std::size_t j = 0; j < n(); ++j) {
            fresh.attr_hists_.add(ds_->record(j));
            fresh.insert(j, labels_[j]);
        }
        return fresh.sizes_ == sizes_ && fresh.cluster_hists_ == cluster_hists_ &&
               fresh.attr_hists_ == attr_hists_;
    }

private:
    ClusterState(const Dataset& ds, std::size_t k)
        : ds_(&ds),
          k_(k),
          labels_(ds.num_records(), 0),
          sizes_(k, 0),
          attr_hists_(HistogramSet::empty_for(ds.domain_sizes())) {
        const auto domains = ds.domain_sizes();
        cluster_hists_.reserve(k * domains.size());
        for (std::size_t i = 0; i < domains.size(); ++i)
            for (std::size_t l = 0; l < k; ++l) cluster_hists_.emplace_back(i, domains[i]);
    }

    const Histogram& cah(std::size_t l, std::size_t i) const { return cluster_hists_[i * k_ + l]; }
    Histogram& cah(std::size_t l, std::size_t i) { return cluster_hists_[i * k_ + l]; }

    void insert(std::size_t j, LabelId l) {
        const Record rec = ds_->record(j);
        for (std::size_t i = 0; i < rec.size(); ++i) cah(l, i).add(rec[i]);
        ++sizes_[l];
    }

    void shift(Record rec, LabelId from, LabelId to) {
        for (std::size_t i = 0; i < rec.size(); ++i) {
            cah(from, i).remove(rec[i]);
            cah(to, i).add(rec[i]);
        }
        --sizes_[from];
        ++sizes_[to];
    }

    LabelId check_move(std::size_t j, LabelId target) const {
        if (j >= n()) throw std::out_of_range("record index out of range");
        if (target >= k_) throw std::out_of_range("target cluster out of range");
        const LabelId source = labels_[j];
        if (source == target) throw std::invalid_argument("target equals the record's current cluster");
        if (sizes_[source] <= 1)
            throw EmptyClusterMove("moving record " + std::to_string(j) + " would empty cluster " +
                                   std::to_string(source));
        return source;
    }

    // Lookup tables and cached terms, built once every record is placed.
    void finish_setup() {
        for (std::size_t l = 0; l < k_; ++l)
            if (sizes_[l] == 0) throw std::invalid_argument("cluster " + std::to_string(l) + " is empty");
        const std::size_t nn = n();
        xlogx_.resize(nn + 1);
        xlogx_[0] = 0.0;
        for (std::size_t c = 1; c <= nn; ++c) xlogx_[c] = static_cast<double>(c) * std::log(static_cast<double>(c));
        log_n_ = std::log(static_cast<double>(nn));
        log_attr_.assign(r(), {});
        weights_.assign(r(), 0.0);
        constant_ = 0.0;
        for (std::size_t i = 0; i < r(); ++i) {
            const Histogram& ah = attr_hists_[i];
            log_attr_[i].resize(ah.domain_size());
            for (std::size_t v = 0; v < ah.domain_size(); ++v) {
                const Count f = ah.count(static_cast<ValueId>(v));
                log_attr_[i][v] = f > 0 ? std::log(static_cast<double>(f)) : 0.0;
            }
            const std::size_t base = k_ * ah.size();
            // base == 1 only for k = 1 over a constant attribute: NMI is the constant 1.
            weights_[i] = base > 1 ? 2.0 / (static_cast<double>(nn) * std::log(static_cast<double>(base)) *
                                            static_cast<double>(r()))
                                   : 0.0;
            constant_ += base > 1 ? 0.0 : 1.0 / static_cast<double>(r());
        }
        terms_.assign(k_ * r(), 0.0);
        for (std::size_t i = 0; i < r(); ++i)
            for (std::size_t l = 0; l < k_; ++l) terms_[i * k_ + l] = term(l, i);
    }

    // sum_v c*ln(c*n / (n_l * AH(v))) over the values present in CAH(l, i),
    // expanded as sum_v [c ln c - c ln AH(v)] + n_l ln n - n_l ln n_l.
    double term(std::size_t l, std::size_t i) const {
        const Histogram& h = cah(l, i);
        const auto counts = h.counts();
        const auto& logs = log_attr_[i];
        double s = 0.0;
        for (std::size_t v = 0; v < counts.size(); ++v) {
            const Count c = counts[v];
            if (c > 0) s += xlogx_[c] - static_cast<double>(c) * logs[v];
        }
        const std::size_t nl = sizes_[l];
        return s + static_cast<double>(nl) * log_n_ - xlogx_[nl];
    }

    const Dataset* ds_;
    std::size_t k_;
    std::vector<LabelId> labels_;
    std::vector<std::size_t> sizes_;
    std::vector<Histogram> cluster_hists_;  // attribute-major: [i * k + l]
    HistogramSet attr_hists_;

    std::vector<double> xlogx_;
    double log_n_ = 0.0;
    std::vector<std::vector<double>> log_attr_;
    std::vector<double> weights_;
    double constant_ = 0.0;
    std::vector<double> terms_;  // [i * k + l]
};

/// ANMI of the state, from histograms only.
inline double state_anmi(const ClusterState& s) { return s.anmi(); }

/// One pass over the records in order. Each record moves to the alternative
/// cluster with the highest ANMI if that beats the current ANMI by more than
/// the configured epsilon. Returns the number of records moved.
inline std::size_t sweep(ClusterState& state, const KanmiConfig& config) {
    std::size_t moved = 0;
    double current = state.objective();
    for (std::size_t j = 0; j < state.n(); ++j) {
        if (!state.can_move(j)) continue;
        const LabelId source = state.label(j);
        LabelId best = source;
        double best_value = 0.0;
        for (std::size_t t = 0; t < state.k(); ++t) {
            if (t == source) continue;
            const double value = state.evaluate_move(j, static_cast<LabelId>(t));
            if (best == source || value > best_value) {
                best = static_cast<LabelId>(t);
                best_value = value;
            }
        }
        if (best != source && best_value > current + config.improvement_epsilon) {
            state.apply_move(j, best);
            current = state.objective();
            ++moved;
        }
    }
    return moved;
}

/// Initialization followed by sweeps until one moves nothing or
/// max_sweeps is reached.
inline KanmiResult run(const Dataset& ds, const KanmiConfig& config) {
    config.validate();
    ClusterState state = ClusterState::initialize(ds, config.k);
    KanmiResult result;
    result.anmi_history.push_back(state.anmi());
    while (result.sweeps_run < config.max_sweeps) {
        const std::size_t moved = sweep(state, config);
        ++result.sweeps_run;
        result.moves_per_sweep.push_back(moved);
        result.anmi_history.push_back(state.anmi());
        if (moved == 0) break;
    }
    result.labels = state.labeling();
    result.final_anmi = result.anmi_history.back();
    return result;
}

}  // namespace kanmi
