#pragma once

// Categorical datasets, value histograms and labelings.
//
// Attribute values are interned per attribute into dense ids, assigned in
// order of first occurrence. Value id v of attribute i therefore doubles as
// the cluster id of the record in the labeling induced by attribute i.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kanmi {

using ValueId = std::uint32_t;
using LabelId = std::uint32_t;
using Count = std::uint32_t;

/// One record viewed as its r interned values.
using Record = std::span<const ValueId>;

/// A length-n vector of dense label ids 0..num_labels-1, each used at least once.
class Labeling {
public:
    Labeling() = default;

    /// Takes ids that are already dense; throws if an id in 0..max is unused.
    explicit Labeling(std::vector<LabelId> labels) : labels_(std::move(labels)) {
        if (labels_.empty()) {
            num_labels_ = 0;
            return;
        }
        const LabelId max_id = *std::max_element(labels_.begin(), labels_.end());
        std::vector<bool> seen(static_cast<std::size_t>(max_id) + 1, false);
        for (LabelId l : labels_) seen[l] = true;
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
            throw std::invalid_argument("labeling ids are not dense: some id in 0..max is unused");
        num_labels_ = static_cast<std::size_t>(max_id) + 1;
    }

    /// Relabels arbitrary ids to dense ids in first-occurrence order.
    template <typename T>
    static Labeling from_raw(std::span<const T> raw) {
        std::unordered_map<T, LabelId> ids;
        std::vector<LabelId> labels;
        labels.reserve(raw.size());
        for (const T& x : raw) {
            auto [it, inserted] = ids.try_emplace(x, static_cast<LabelId>(ids.size()));
            labels.push_back(it->second);
        }
        Labeling out;
        out.labels_ = std::move(labels);
        out.num_labels_ = ids.size();
        return out;
    }

    template <typename T>
    static Labeling from_raw(const std::vector<T>& raw) {
        return from_raw(std::span<const T>(raw));
    }

    std::size_t size() const { return labels_.size(); }
    std::size_t num_labels() const { return num_labels_; }
    LabelId operator[](std::size_t j) const { return labels_[j]; }
    const std::vector<LabelId>& labels() const { return labels_; }

    /// Number of records carrying each label.
    std::vector<std::size_t> cluster_sizes() const {
        std::vector<std::size_t> sizes(num_labels_, 0);
        for (LabelId l : labels_) ++sizes[l];
        return sizes;
    }

    friend bool operator==(const Labeling&, const Labeling&) = default;

private:
    std::vector<LabelId> labels_;
    std::size_t num_labels_ = 0;
};

/// Value -> frequency table over one attribute's dense value domain.
///
/// Values with frequency zero count as absent: size() reports the number of
/// values present, matching a hash table from which zero entries are erased.
class Histogram {
public:
    Histogram() = default;
    Histogram(std::size_t attribute, std::size_t domain_size)
        : attribute_(attribute), counts_(domain_size, 0) {}

    std::size_t attribute() const { return attribute_; }
    std::size_t domain_size() const { return counts_.size(); }
    /// Number of distinct values currently present.
    std::size_t size() const { return distinct_; }
    std::size_t total() const { return total_; }
    bool empty() const { return total_ == 0; }

    /// Frequency of v; zero for absent or out-of-domain values.
    Count count(ValueId v) const { return v < counts_.size() ? counts_[v] : 0; }
    bool contains(ValueId v) const { return count(v) > 0; }
    std::span<const Count> counts() const { return counts_; }

    void add(ValueId v) {
        if (v >= counts_.size()) counts_.resize(static_cast<std::size_t>(v) + 1, 0);
        if (counts_[v]++ == 0) ++distinct_;
        ++total_;
    }

    /// Removing an absent value means the caller's bookkeeping is broken.
    void remove(ValueId v) {
        if (count(v) == 0)
            throw std::logic_error("histogram remove: value " + std::to_string(v) +
                                   " is absent from histogram of attribute " +
                                   std::to_string(attribute_));
        if (--counts_[v] == 0) --distinct_;
        --total_;
    }

    /// Present (value, frequency) pairs in value-id order.
    std::vector<std::pair<ValueId, Count>> entries() const {
        std::vector<std::pair<ValueId, Count>> out;
        out.reserve(distinct_);
        for (std::size_t v = 0; v < counts_.size(); ++v)
            if (counts_[v] > 0) out.emplace_back(static_cast<ValueId>(v), counts_[v]);
        return out;
    }

    /// Equality of the frequency tables; trailing zero slots are ignored.
    friend bool operator==(const Histogram& a, const Histogram& b) {
        if (a.attribute_ != b.attribute_ || a.total_ != b.total_ || a.distinct_ != b.distinct_)
            return false;
        const std::size_t m = std::max(a.counts_.size(), b.counts_.size());
        for (std::size_t v = 0; v < m; ++v)
            if (a.count(static_cast<ValueId>(v)) != b.count(static_cast<ValueId>(v))) return false;
        return true;
    }

private:
    std::size_t attribute_ = 0;
    std::vector<Count> counts_;
    std::size_t distinct_ = 0;
    std::size_t total_ = 0;
};

/// One histogram per attribute over a common record set.
class HistogramSet {
public:
    HistogramSet() = default;
    explicit HistogramSet(std::vector<Histogram> histograms) : histograms_(std::move(histograms)) {
        for (const auto& h : histograms_)
            if (h.total() != histograms_.front().total())
                throw std::invalid_argument("histogram set members disagree on total");
    }

    /// Empty histograms sized to the given attribute domains.
    static HistogramSet empty_for(std::span<const std::size_t> domain_sizes) {
        std::vector<Histogram> hs;
        hs.reserve(domain_sizes.size());
        for (std::size_t i = 0; i < domain_sizes.size(); ++i) hs.emplace_back(i, domain_sizes[i]);
        HistogramSet out;
        out.histograms_ = std::move(hs);
        return out;
    }

    std::size_t num_attributes() const { return histograms_.size(); }
    std::size_t total() const { return histograms_.empty() ? 0 : histograms_.front().total(); }
    const Histogram& operator[](std::size_t i) const { return histograms_[i]; }
    Histogram& operator[](std::size_t i) { return histograms_[i]; }
    auto begin() const { return histograms_.begin(); }
    auto end() const { return histograms_.end(); }

    void add(Record rec) {
        for (std::size_t i = 0; i < histograms_.size(); ++i) histograms_[i].add(rec[i]);
    }
    void remove(Record rec) {
        for (std::size_t i = 0; i < histograms_.size(); ++i) histograms_[i].remove(rec[i]);
    }

    friend bool operator==(const HistogramSet&, const HistogramSet&) = default;

private:
    std::vector<Histogram> histograms_;
};

/// n records over r categorical attributes, stored row-major as interned ids.
class Dataset {
public:
    Dataset() = default;

    /// Builds a dataset from string tokens, interning each column.
    static Dataset from_tokens(const std::vector<std::vector<std::string>>& rows,
                               std::vector<std::string> attribute_names = {}) {
        if (rows.empty()) throw std::invalid_argument("dataset must contain at least one record");
        const std::size_t r = rows.front().size();
        if (r == 0) throw std::invalid_argument("dataset must have at least one attribute");
        Dataset ds;
        ds.r_ = r;
        ds.n_ = rows.size();
        ds.dictionaries_.resize(r);
        std::vector<std::unordered_map<std::string, ValueId>> lookup(r);
        ds.values_.reserve(ds.n_ * r);
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (rows[j].size() != r)
                throw std::invalid_argument("record " + std::to_string(j) + " has " +
                                            std::to_string(rows[j].size()) + " values, expected " +
                                            std::to_string(r));
            for (std::size_t i = 0; i < r; ++i) {
                auto [it, inserted] =
                    lookup[i].try_emplace(rows[j][i], static_cast<ValueId>(ds.dictionaries_[i].size()));
                if (inserted) ds.dictionaries_[i].push_back(rows[j][i]);
                ds.values_.push_back(it->second);
            }
        }
        ds.set_names(std::move(attribute_names));
        return ds;
    }

    /// Builds a dataset from pre-interned ids; ids are re-interned in
    /// first-occurrence order so the dense-id invariant always holds.
    static Dataset from_ids(const std::vector<std::vector<ValueId>>& rows) {
        std::vector<std::vector<std::string>> tokens;
        tokens.reserve(rows.size());
        for (const auto& row : rows) {
            std::vector<std::string> t;
            t.reserve(row.size());
            for (ValueId v : row) t.push_back(std::to_string(v));
            tokens.push_back(std::move(t));
        }
        return from_tokens(tokens);
    }

    std::size_t num_records() const { return n_; }
    std::size_t num_attributes() const { return r_; }

    Record record(std::size_t j) const { return {values_.data() + j * r_, r_}; }
    ValueId value(std::size_t j, std::size_t i) const { return values_[j * r_ + i]; }

    /// p_i: number of distinct values of attribute i.
    std::size_t domain_size(std::size_t i) const { return dictionaries_[i].size(); }
    std::vector<std::size_t> domain_sizes() const {
        std::vector<std::size_t> out(r_);
        for (std::size_t i = 0; i < r_; ++i) out[i] = dictionaries_[i].size();
        return out;
    }
    /// V_i in first-occurrence order.
    const std::vector<std::string>& values_of(std::size_t i) const { return dictionaries_[i]; }
    const std::string& token(std::size_t i, ValueId v) const { return dictionaries_[i].at(v); }
    /// Interned id of a token, if attribute i ever takes it.
    std::optional<ValueId> find_value(std::size_t i, std::string_view tok) const {
        const auto& d = dictionaries_.at(i);
        auto it = std::find(d.begin(), d.end(), tok);
        if (it == d.end()) return std::nullopt;
        return static_cast<ValueId>(it - d.begin());
    }

    const std::vector<std::string>& attribute_names() const { return names_; }

    const std::optional<Labeling>& ground_truth() const { return ground_truth_; }
    /// Class tokens indexed by ground-truth label id.
    const std::vector<std::string>& class_names() const { return class_names_; }
    void set_ground_truth(Labeling truth, std::vector<std::string> class_names = {}) {
        if (truth.size() != n_)
            throw std::invalid_argument("ground truth has " + std::to_string(truth.size()) +
                                        " labels for " + std::to_string(n_) + " records");
        ground_truth_ = std::move(truth);
        class_names_ = std::move(class_names);
    }

    /// The first `count` records, with values re-interned.
    Dataset prefix(std::size_t count) const {
        if (count == 0 || count > n_) throw std::out_of_range("dataset prefix length out of range");
        std::vector<std::vector<std::string>> rows;
        rows.reserve(count);
        for (std::size_t j = 0; j < count; ++j) {
            std::vector<std::string> row;
            row.reserve(r_);
            for (std::size_t i = 0; i < r_; ++i) row.push_back(token(i, value(j, i)));
            rows.push_back(std::move(row));
        }
        Dataset out = from_tokens(rows, names_);
        if (ground_truth_) {
            std::vector<LabelId> head(ground_truth_->labels().begin(),
                                      ground_truth_->labels().begin() + static_cast<std::ptrdiff_t>(count));
            std::vector<std::string> names;
            Labeling truth = Labeling::from_raw(head);
            // from_raw renumbers; keep names aligned with the new ids.
            if (!class_names_.empty()) {
                names.resize(truth.num_labels());
                for (std::size_t j = 0; j < count; ++j) names[truth[j]] = class_names_[head[j]];
            }
            out.set_ground_truth(std::move(truth), std::move(names));
        }
        return out;
    }

private:
    void set_names(std::vector<std::string> names) {
        if (names.empty()) {
            names.reserve(r_);
            for (std::size_t i = 0; i < r_; ++i) names.push_back("a" + std::to_string(i + 1));
        } else if (names.size() != r_) {
            throw std::invalid_argument("attribute name count does not match record arity");
        }
        names_ = std::move(names);
    }

    std::size_t n_ = 0;
    std::size_t r_ = 0;
    std::vector<ValueId> values_;
    std::vector<std::vector<std::string>> dictionaries_;
    std::vector<std::string> names_;
    std::optional<Labeling> ground_truth_;
    std::vector<std::string> class_names_;
};

/// H = {h_1..h_r} over the whole dataset; every member has total n.
inline HistogramSet build_histograms(const Dataset& ds) {
    const auto domains = ds.domain_sizes();
    HistogramSet hs = HistogramSet::empty_for(domains);
    for (std::size_t j = 0; j < ds.num_records(); ++j) hs.add(ds.record(j));
    return hs;
}

/// Histograms of an arbitrary record set.
inline HistogramSet build_histograms(std::span<const Record> records, std::size_t num_attributes) {
    std::vector<std::size_t> domains(num_attributes, 0);
    HistogramSet hs = HistogramSet::empty_for(domains);
    for (Record rec : records) {
        if (rec.size() != num_attributes) throw std::invalid_argument("record arity mismatch");
        hs.add(rec);
    }
    return hs;
}

/// The partition induced by attribute i: same label iff same value.
inline Labeling attribute_labeling(const Dataset& ds, std::size_t i) {
    if (i >= ds.num_attributes())
        throw std::out_of_range("attribute index " + std::to_string(i) + " out of range (r = " +
                                std::to_string(ds.num_attributes()) + ")");
    std::vector<LabelId> labels(ds.num_records());
    for (std::size_t j = 0; j < ds.num_records(); ++j) labels[j] = ds.value(j, i);
    return Labeling(std::move(labels));
}

/// All r attribute-induced labelings.
inline std::vector<Labeling> attribute_labelings(const Dataset& ds) {
    std::vector<Labeling> out;
    out.reserve(ds.num_attributes());
    for (std::size_t i = 0; i < ds.num_attributes(); ++i) out.push_back(attribute_labeling(ds, i));
    return out;
}

}  // namespace kanmi
