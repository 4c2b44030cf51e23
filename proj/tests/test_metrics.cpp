#include <gtest/gtest.h>

#include <random>

#include "kanmi/core.hpp"
#include "kanmi/metrics.hpp"
#include "test_support.hpp"

namespace kanmi {
namespace {

using namespace metrics;

std::vector<Record> all_records(const Dataset& ds) {
    std::vector<Record> out;
    for (std::size_t j = 0; j < ds.num_records(); ++j) out.push_back(ds.record(j));
    return out;
}

TEST(Delta, Basics) {
    EXPECT_EQ(delta(0, 0), 0);
    EXPECT_EQ(delta(0, 1), 1);
    EXPECT_EQ(delta(3, 1), 1);
}

TEST(D1, SampleTableRows) {
    const Dataset ds = testing::sample_table();
    EXPECT_EQ(d1(ds.record(0), ds.record(3)), 1u);  // (M,A) vs (F,A)
    EXPECT_EQ(d1(ds.record(0), ds.record(0)), 0u);
    // (M,A) vs (F,B)
    EXPECT_EQ(d1(ds.record(0), ds.record(2)), 2u);
    const std::vector<ValueId> three{0, 0, 0};
    EXPECT_THROW(d1(ds.record(0), three), std::invalid_argument);
}

TEST(D1, IsAMetric) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Dataset ds = testing::random_dataset(rng, 3, 1 + rng() % 6, 1 + rng() % 4);
        const Record x = ds.record(0), y = ds.record(1), z = ds.record(2);
        EXPECT_EQ(d1(x, y), d1(y, x));
        EXPECT_EQ(d1(x, x), 0u);
        EXPECT_LE(d1(x, z), d1(x, y) + d1(y, z));
    }
}

TEST(D2, SampleTableAgainstFirstRecord) {
    const Dataset ds = testing::sample_table();
    const auto recs = all_records(ds);
    // Mismatch counts vs (M,A) row by row: 0 1 2 1 1 2 1 2 1 1 -> 12.
    std::size_t brute = 0;
    for (Record x : recs)
        for (std::size_t i = 0; i < 2; ++i) brute += x[i] != ds.record(0)[i];
    ASSERT_EQ(brute, 12u);
    EXPECT_DOUBLE_EQ(d2(recs, ds.record(0)), 1.2);
}

TEST(D2, EdgeCases) {
    const Dataset ds = Dataset::from_tokens({{"a", "b", "c"}, {"x", "y", "z"}, {"x", "y", "z"}});
    const std::vector<Record> self{ds.record(0)};
    EXPECT_EQ(d2(self, ds.record(0)), 0.0);
    const std::vector<Record> others{ds.record(1), ds.record(2)};
    EXPECT_EQ(d2(others, ds.record(0)), 3.0);
    EXPECT_THROW(d2(std::vector<Record>{}, ds.record(0)), std::invalid_argument);
}

TEST(D3D4, SampleTable) {
    const Dataset ds = testing::sample_table();
    const HistogramSet hs = build_histograms(ds);
    EXPECT_DOUBLE_EQ(d4(hs, ds.record(0)), 0.8);  // (5 + 3) / 10
    EXPECT_DOUBLE_EQ(d3(hs, ds.record(0)), 1.2);
    EXPECT_EQ(d3(hs, ds.record(0)), d2(all_records(ds), ds.record(0)));
}

TEST(D3D4, SingletonAndAbsentProbe) {
    const Dataset ds = Dataset::from_tokens({{"a", "b", "c"}});
    const HistogramSet hs = build_histograms(ds);
    EXPECT_EQ(d3(hs, ds.record(0)), 0.0);
    EXPECT_EQ(d4(hs, ds.record(0)), 3.0);
    const std::vector<ValueId> absent{5, 5, 5};
    EXPECT_EQ(d3(hs, absent), 3.0);
    EXPECT_EQ(d4(hs, absent), 0.0);
}

TEST(D3D4, ZeroTotalRejected) {
    const std::vector<std::size_t> domains{2};
    const HistogramSet empty = HistogramSet::empty_for(domains);
    const std::vector<ValueId> y{0};
    EXPECT_THROW(d3(empty, y), std::invalid_argument);
    EXPECT_THROW(d4(empty, y), std::invalid_argument);
}

TEST(D3D4, ArgminD3EqualsArgmaxD4) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t r = 1 + rng() % 4;
        const Dataset ds = testing::random_dataset(rng, 20, r, 3);
        // Split into 3 arbitrary clusters.
        std::vector<std::vector<Record>> clusters(3);
        for (std::size_t j = 0; j < ds.num_records(); ++j) clusters[j % 3].push_back(ds.record(j));
        const Record probe = ds.record(rng() % ds.num_records());
        std::vector<double> v3, v4;
        for (const auto& c : clusters) {
            const HistogramSet hs = build_histograms(c, r);
            v3.push_back(d3(hs, probe));
            v4.push_back(d4(hs, probe));
        }
        const double min3 = *std::min_element(v3.begin(), v3.end());
        const double max4 = *std::max_element(v4.begin(), v4.end());
        for (std::size_t l = 0; l < 3; ++l) EXPECT_EQ(v3[l] == min3, v4[l] == max4);
    }
}

}  // namespace
}  // namespace kanmi
