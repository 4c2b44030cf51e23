#include <gtest/gtest.h>

#include <random>

#include "kanmi/experiments.hpp"
#include "test_support.hpp"

namespace kanmi {
namespace {

using namespace experiments;

TEST(Accuracy, IdenticalLabelsHaveNoError) {
    const Labeling l({0, 1, 1, 2, 0});
    const auto rep = accuracy(l, l);
    EXPECT_EQ(rep.accuracy, 1.0);
    EXPECT_EQ(rep.error, 0.0);
}

TEST(Accuracy, HandExample) {
    // Cluster 0: six of class A and one B. Cluster 1: two B and one A.
    const Labeling labels({0, 0, 0, 0, 0, 0, 0, 1, 1, 1});
    const Labeling classes({0, 0, 0, 0, 0, 0, 1, 1, 1, 0});
    const auto rep = accuracy(labels, classes);
    EXPECT_DOUBLE_EQ(rep.accuracy, 0.8);
    EXPECT_NEAR(rep.error, 0.2, 1e-15);
    EXPECT_EQ(rep.per_cluster_dominant, (std::vector<DominantClass>{{0, 6}, {1, 2}}));
    EXPECT_EQ(rep.k, 2u);
    EXPECT_EQ(rep.n, 10u);
}

TEST(Accuracy, SingleClusterGivesMajorityShare) {
    std::vector<LabelId> classes(699, 1);
    std::fill(classes.begin(), classes.begin() + 458, 0);
    const auto rep = accuracy(Labeling(std::vector<LabelId>(699, 0)), Labeling(classes));
    EXPECT_NEAR(rep.accuracy, 458.0 / 699.0, 1e-15);
    EXPECT_NEAR(rep.accuracy, 0.655, 5e-4);
}

TEST(Accuracy, SharedDominantClassIsAllowed) {
    const auto rep = accuracy(Labeling({0, 0, 1, 1}), Labeling({0, 0, 0, 1}));
    EXPECT_EQ(rep.per_cluster_dominant[0].class_id, 0u);
    EXPECT_EQ(rep.per_cluster_dominant[1].class_id, 0u);  // 1-1 tie, lowest class
    EXPECT_DOUBLE_EQ(rep.accuracy, 0.75);
}

TEST(Accuracy, InvariantUnderClusterRelabeling) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 5 + rng() % 40;
        const auto labels = testing::random_labels(rng, n, 1 + rng() % 4);
        const auto classes = testing::random_labels(rng, n, 1 + rng() % 3);
        std::vector<LabelId> flipped(labels);
        const LabelId top = *std::max_element(labels.begin(), labels.end());
        for (auto& l : flipped) l = top - l;
        EXPECT_EQ(accuracy(Labeling(labels), Labeling(classes)).accuracy,
                  accuracy(Labeling(flipped), Labeling(classes)).accuracy);
    }
}

TEST(Accuracy, Rejects) {
    EXPECT_THROW(accuracy(Labeling({0, 1}), Labeling({0})), std::invalid_argument);
}

TEST(Squeezer, ZeroThresholdJoinsEverything) {
    const Labeling l = squeezer(testing::sample_table(), 0.0);
    EXPECT_EQ(l.num_labels(), 1u);
}

TEST(Squeezer, UnreachableThresholdIsolatesEverything) {
    const Labeling l = squeezer(testing::sample_table(), 2.5);
    EXPECT_EQ(l.num_labels(), 10u);
}

TEST(Squeezer, SampleTableTwoClusters) {
    const SqueezerFit fit = squeezer_for_k(testing::sample_table(), 2);
    EXPECT_EQ(fit.labels.num_labels(), 2u);
    // Any threshold in (0.5, 1] splits the table by its first attribute:
    // record 3 (F,B) scores 1/2 against {(M,A),(M,B)} and opens cluster 1,
    // after which every record scores at least 1 against its own gender.
    EXPECT_GT(fit.threshold, 0.5);
    EXPECT_LE(fit.threshold, 1.0);
    EXPECT_EQ(fit.labels, attribute_labeling(testing::sample_table(), 0));
    EXPECT_EQ(squeezer(testing::sample_table(), 1.2).num_labels(), 6u);
}

TEST(Generator, SameSeedSameRows) {
    GeneratorSpec spec;
    spec.rows = 200;
    EXPECT_EQ(generate_rows(spec), generate_rows(spec));
    spec.seed = 6;
    GeneratorSpec other = spec;
    other.seed = 7;
    EXPECT_NE(generate_rows(spec), generate_rows(other));
}

TEST(Generator, FullSkewGivesPrototypes) {
    GeneratorSpec spec;
    spec.rows = 300;
    spec.classes = 4;
    spec.skew = 1.0;
    const Dataset ds = generate(spec);
    ASSERT_TRUE(ds.ground_truth());
    const Labeling& truth = *ds.ground_truth();
    for (std::size_t a = 0; a < ds.num_records(); ++a)
        for (std::size_t b = a + 1; b < ds.num_records(); ++b) {
            bool same = true;
            for (std::size_t i = 0; i < ds.num_attributes(); ++i) same = same && ds.value(a, i) == ds.value(b, i);
            EXPECT_EQ(same, truth[a] == truth[b]);
        }
}

TEST(Generator, ShapeAndValidation) {
    GeneratorSpec spec;
    spec.rows = 50;
    spec.attributes = 4;
    const Dataset ds = generate(spec);
    EXPECT_EQ(ds.num_records(), 50u);
    EXPECT_EQ(ds.num_attributes(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LE(ds.domain_size(i), spec.values_per_attribute);
    spec.rows = 0;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec.rows = 10;
    spec.skew = 0.0;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(Benchmark, RowsPerKAndAverage) {
    GeneratorSpec spec;
    spec.rows = 120;
    spec.classes = 3;
    spec.attributes = 5;
    spec.skew = 0.8;
    const Dataset ds = generate(spec);
    const auto t = benchmark(ds, Algorithm::kanmi, {2, 3, 4});
    ASSERT_EQ(t.rows.size(), 3u);
    double sum = 0.0;
    for (const auto& r : t.rows) sum += r.error;
    EXPECT_DOUBLE_EQ(t.average_error, sum / 3.0);
    EXPECT_EQ(t.rows[1].clusters, 3u);
    EXPECT_THROW(benchmark(ds, Algorithm::kanmi, {}), std::invalid_argument);
    EXPECT_THROW(benchmark(testing::sample_table(), Algorithm::kanmi, {2}), std::invalid_argument);
    const auto sq = benchmark(ds, Algorithm::squeezer, {2, 3});
    EXPECT_EQ(sq.rows.size(), 2u);
}

TEST(Reference, PublishedAverages) {
    EXPECT_EQ(find_reference("votes")->kanmi, 0.092);
    EXPECT_EQ(find_reference("mushroom")->kanmi, 0.165);
    EXPECT_EQ(find_reference("cancer")->kanmi, 0.039);
    EXPECT_EQ(find_reference("cancer")->squeezer, 0.091);
    EXPECT_EQ(find_reference("nope"), nullptr);
}

TEST(Algorithm, Parse) {
    EXPECT_EQ(parse_algorithm("kanmi"), Algorithm::kanmi);
    EXPECT_EQ(parse_algorithm("squeezer"), Algorithm::squeezer);
    EXPECT_THROW(parse_algorithm("kmodes"), std::invalid_argument);
}

}  // namespace
}  // namespace kanmi
