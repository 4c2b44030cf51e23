#include <gtest/gtest.h>

#include <random>

#include "kanmi/core.hpp"
#include "test_support.hpp"

namespace kanmi {
namespace {

using testing::sample_table;

std::vector<std::vector<std::size_t>> groups(const Labeling& l) {
    std::vector<std::vector<std::size_t>> g(l.num_labels());
    for (std::size_t j = 0; j < l.size(); ++j) g[l[j]].push_back(j + 1);
    return g;
}

TEST(BuildHistograms, SampleTable) {
    const Dataset ds = sample_table();
    const HistogramSet hs = build_histograms(ds);
    ASSERT_EQ(hs.num_attributes(), 2u);
    EXPECT_EQ(hs.total(), 10u);

    const auto m = *ds.find_value(0, "M");
    const auto f = *ds.find_value(0, "F");
    EXPECT_EQ(hs[0].count(m), 5u);
    EXPECT_EQ(hs[0].count(f), 5u);
    EXPECT_EQ(hs[0].size(), 2u);

    EXPECT_EQ(hs[1].count(*ds.find_value(1, "A")), 3u);
    EXPECT_EQ(hs[1].count(*ds.find_value(1, "B")), 3u);
    EXPECT_EQ(hs[1].count(*ds.find_value(1, "C")), 4u);
    EXPECT_EQ(hs[1].size(), 3u);
}

TEST(BuildHistograms, SingleRecord) {
    const Dataset ds = Dataset::from_tokens({{"a", "b"}});
    const HistogramSet hs = build_histograms(ds);
    EXPECT_EQ(hs[0].entries(), (std::vector<std::pair<ValueId, Count>>{{0, 1}}));
    EXPECT_EQ(hs[1].entries(), (std::vector<std::pair<ValueId, Count>>{{0, 1}}));
    EXPECT_EQ(hs.total(), 1u);
}

TEST(BuildHistograms, MatchesIncrementalAdds) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Dataset ds = testing::random_dataset(rng, 1 + rng() % 40, 1 + rng() % 5, 1 + rng() % 6);
        HistogramSet inc = HistogramSet::empty_for(ds.domain_sizes());
        for (std::size_t j = 0; j < ds.num_records(); ++j) inc.add(ds.record(j));
        const HistogramSet full = build_histograms(ds);
        EXPECT_EQ(inc, full);
        for (std::size_t i = 0; i < ds.num_attributes(); ++i) {
            EXPECT_EQ(full[i].size(), ds.domain_size(i));
            EXPECT_EQ(full[i].total(), ds.num_records());
        }
    }
}

TEST(AttributeLabeling, SampleTablePartitions) {
    const Dataset ds = sample_table();
    const Labeling a1 = attribute_labeling(ds, 0);
    EXPECT_EQ(groups(a1), (std::vector<std::vector<std::size_t>>{{1, 2, 5, 7, 10}, {3, 4, 6, 8, 9}}));
    const Labeling a2 = attribute_labeling(ds, 1);
    EXPECT_EQ(groups(a2), (std::vector<std::vector<std::size_t>>{{1, 4, 9}, {2, 3, 10}, {5, 6, 7, 8}}));
    EXPECT_EQ(a2.num_labels(), 3u);
}

TEST(AttributeLabeling, ConstantColumnIsOneCluster) {
    const Dataset ds = Dataset::from_tokens({{"x", "1"}, {"x", "2"}, {"x", "3"}});
    const Labeling l = attribute_labeling(ds, 0);
    EXPECT_EQ(l.num_labels(), 1u);
    EXPECT_EQ(l.labels(), (std::vector<LabelId>{0, 0, 0}));
}

TEST(AttributeLabeling, OutOfRange) {
    EXPECT_THROW(attribute_labeling(sample_table(), 2), std::out_of_range);
}

TEST(AttributeLabeling, SizesEqualHistogramFrequencies) {
    const Dataset ds = sample_table();
    const HistogramSet hs = build_histograms(ds);
    for (std::size_t i = 0; i < ds.num_attributes(); ++i) {
        const auto sizes = attribute_labeling(ds, i).cluster_sizes();
        for (std::size_t v = 0; v < sizes.size(); ++v) EXPECT_EQ(sizes[v], hs[i].count(static_cast<ValueId>(v)));
    }
}

TEST(AttributeLabeling, DependsOnlyOnItsColumn) {
    std::mt19937_64 rng(3);
    std::vector<std::vector<std::string>> rows(30, std::vector<std::string>(3));
    for (auto& row : rows)
        for (auto& v : row) v = std::to_string(rng() % 4);
    const Labeling before = attribute_labeling(Dataset::from_tokens(rows), 1);
    // Shuffle columns 0 and 2 across records, keep column 1 in place.
    std::vector<std::string> c0, c2;
    for (auto& row : rows) {
        c0.push_back(row[0]);
        c2.push_back(row[2]);
    }
    std::shuffle(c0.begin(), c0.end(), rng);
    std::shuffle(c2.begin(), c2.end(), rng);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        rows[j][0] = c0[j];
        rows[j][2] = c2[j];
    }
    EXPECT_EQ(attribute_labeling(Dataset::from_tokens(rows), 1), before);
}

TEST(Histogram, AddRemove) {
    Histogram h(0, 2);
    for (int c = 0; c < 5; ++c) h.add(0);
    h.add(0);
    EXPECT_EQ(h.count(0), 6u);
    EXPECT_EQ(h.total(), 6u);

    Histogram one(0, 1);
    one.add(0);
    one.remove(0);
    EXPECT_EQ(one.size(), 0u);
    EXPECT_EQ(one.total(), 0u);
    EXPECT_FALSE(one.contains(0));
}

TEST(Histogram, AddThenRemoveRestores) {
    Histogram h(1, 4);
    h.add(0);
    h.add(2);
    h.add(2);
    const Histogram before = h;
    h.add(3);
    h.remove(3);
    EXPECT_EQ(h, before);
    h.add(7);  // beyond the declared domain
    h.remove(7);
    EXPECT_EQ(h, before);
}

TEST(Histogram, RemovingAbsentValueIsContractViolation) {
    Histogram h(0, 3);
    h.add(1);
    EXPECT_THROW(h.remove(0), std::logic_error);
    EXPECT_THROW(h.remove(9), std::logic_error);
}

TEST(Dataset, RejectsRaggedRowsAndEmptyInput) {
    EXPECT_THROW(Dataset::from_tokens({{"a", "b"}, {"c"}}), std::invalid_argument);
    EXPECT_THROW(Dataset::from_tokens({}), std::invalid_argument);
    EXPECT_THROW(Dataset::from_tokens({{}}), std::invalid_argument);
}

TEST(Dataset, MissingTokenIsOrdinaryValue) {
    const Dataset ds = Dataset::from_tokens({{"y"}, {"?"}, {"n"}, {"?"}});
    EXPECT_EQ(ds.domain_size(0), 3u);
    EXPECT_EQ(build_histograms(ds)[0].count(*ds.find_value(0, "?")), 2u);
}

TEST(Dataset, PrefixKeepsGroundTruthNames) {
    Dataset ds = Dataset::from_tokens({{"a"}, {"b"}, {"a"}});
    ds.set_ground_truth(Labeling({0, 1, 1}), {"x", "y"});
    const Dataset head = ds.prefix(1);
    EXPECT_EQ(head.num_records(), 1u);
    EXPECT_EQ(head.class_names(), (std::vector<std::string>{"x"}));
}

TEST(Labeling, DenseInvariant) {
    EXPECT_THROW(Labeling({0, 2}), std::invalid_argument);
    const Labeling l = Labeling::from_raw(std::vector<int>{7, 3, 7, 9});
    EXPECT_EQ(l.labels(), (std::vector<LabelId>{0, 1, 0, 2}));
    EXPECT_EQ(l.num_labels(), 3u);
}

}  // namespace
}  // namespace kanmi
