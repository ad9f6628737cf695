#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "regroup/errors.hpp"
#include "regroup/eval.hpp"
#include "regroup/rng.hpp"

using namespace regroup;

namespace {

// Independent MI oracle: explicit cluster member lists and pairwise set
// intersections, no shared code with the implementation.
double oracle_mi(const Clustering &u, const Clustering &v)
{
    std::set<int64_t> labels_u(u.labels.begin(), u.labels.end());
    std::set<int64_t> labels_v(v.labels.begin(), v.labels.end());
    const double n = static_cast<double>(u.labels.size());
    double mi = 0.0;
    for (int64_t lu : labels_u) {
        std::vector<size_t> members_u;
        for (size_t i = 0; i < u.labels.size(); ++i)
            if (u.labels[i] == lu)
                members_u.push_back(i);
        for (int64_t lv : labels_v) {
            std::vector<size_t> members_v;
            for (size_t i = 0; i < v.labels.size(); ++i)
                if (v.labels[i] == lv)
                    members_v.push_back(i);
            std::vector<size_t> common;
            std::set_intersection(members_u.begin(), members_u.end(), members_v.begin(),
                                  members_v.end(), std::back_inserter(common));
            if (common.empty())
                continue;
            const double nij = static_cast<double>(common.size());
            mi += (nij / n) * std::log(n * nij / (static_cast<double>(members_u.size()) *
                                                  static_cast<double>(members_v.size())));
        }
    }
    return mi;
}

// Pair-count oracle: direct enumeration of all unordered element pairs.
PairwiseCounts oracle_counts(const Clustering &pred, const Clustering &ref)
{
    PairwiseCounts counts;
    for (size_t i = 0; i < pred.labels.size(); ++i) {
        for (size_t j = i + 1; j < pred.labels.size(); ++j) {
            const bool same_pred = pred.labels[i] == pred.labels[j];
            const bool same_ref = ref.labels[i] == ref.labels[j];
            if (same_pred && same_ref)
                counts.tp++;
            else if (!same_pred && !same_ref)
                counts.tn++;
            else if (same_pred)
                counts.fp++;
            else
                counts.fn++;
        }
    }
    return counts;
}

Clustering random_clustering(Xoshiro256 &rng, size_t n, int max_groups)
{
    Clustering c;
    for (size_t i = 0; i < n; ++i)
        c.labels.push_back(static_cast<int64_t>(rng.below(static_cast<uint64_t>(max_groups))));
    return c;
}

} // namespace

TEST_CASE("MI of independent halves is zero")
{
    const Clustering u{{0, 0, 1, 1}};
    const Clustering v{{0, 1, 0, 1}};
    // every contingency cell holds one element: ln(4*1/(2*2)) = 0
    CHECK(mutual_information(u, v) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("MI of a two-cluster split with itself is ln 2")
{
    const Clustering u{{0, 0, 1, 1}};
    CHECK(mutual_information(u, u) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("single-cluster labelings carry no information")
{
    const Clustering u{{0, 0, 0}};
    CHECK(mutual_information(u, u) == doctest::Approx(0.0));
}

TEST_CASE("MI rejects mismatched lengths")
{
    CHECK_THROWS_AS(mutual_information(Clustering{{0, 1}}, Clustering{{0}}), Error);
}

TEST_CASE("entropy examples")
{
    CHECK(entropy(Clustering{{0, 0, 0, 0}}) == doctest::Approx(0.0));
    CHECK(entropy(Clustering{{0, 0, 1, 1}}) == doctest::Approx(std::log(2.0)));
    CHECK(entropy(Clustering{{0, 1, 2, 3}}) == doctest::Approx(std::log(4.0)));
}

TEST_CASE("NMI of identical nondegenerate clusterings is one")
{
    const Clustering u{{0, 0, 1, 2, 2}};
    CHECK(nmi(u, u) == doctest::Approx(1.0));
}

TEST_CASE("NMI of independent clusterings is zero")
{
    CHECK(nmi(Clustering{{0, 0, 1, 1}}, Clustering{{0, 1, 0, 1}}) == doctest::Approx(0.0));
}

TEST_CASE("NMI ignores group id names")
{
    const Clustering u{{0, 0, 1, 1, 2}};
    const Clustering v{{9, 9, 4, 4, 7}};
    CHECK(nmi(u, v) == doctest::Approx(1.0));
}

TEST_CASE("NMI degenerate convention: two single-cluster labelings are identical")
{
    CHECK(nmi(Clustering{{5, 5, 5}}, Clustering{{2, 2, 2}}) == doctest::Approx(1.0));
    // one degenerate side only: MI is zero, mean entropy positive
    CHECK(nmi(Clustering{{0, 0, 0}}, Clustering{{0, 1, 2}}) == doctest::Approx(0.0));
}

TEST_CASE("pairwise counts enumerate the three-element examples")
{
    const auto equal = pairwise_counts(Clustering{{0, 0, 1}}, Clustering{{0, 0, 1}});
    CHECK(equal.tp == 1);
    CHECK(equal.tn == 2);
    CHECK(equal.fp == 0);
    CHECK(equal.fn == 0);

    const auto merged = pairwise_counts(Clustering{{0, 0, 0}}, Clustering{{0, 0, 1}});
    CHECK(merged.tp == 1);
    CHECK(merged.tn == 0);
    CHECK(merged.fp == 2);
    CHECK(merged.fn == 0);

    const auto split = pairwise_counts(Clustering{{0, 1, 2}}, Clustering{{0, 0, 0}});
    CHECK(split.tp == 0);
    CHECK(split.fn == 3);
}

TEST_CASE("published accuracy rows reproduce")
{
    CHECK(accuracy({214, 21280, 1486, 276}) == doctest::Approx(0.92).epsilon(0.005));
    CHECK(accuracy({790, 71072, 1646, 748}) == doctest::Approx(0.97).epsilon(0.005));
    CHECK_THROWS_AS(accuracy(PairwiseCounts{}), Error);
}

TEST_CASE("perfect clustering has accuracy one")
{
    CHECK(accuracy({10, 35, 0, 0}) == doctest::Approx(1.0));
}

TEST_CASE("doubled view doubles the counts and keeps accuracy")
{
    const PairwiseCounts counts{3, 5, 1, 2};
    const PairwiseCounts doubled = counts.doubled();
    CHECK(doubled.tp == 6);
    CHECK(doubled.tn == 10);
    CHECK(doubled.fp == 2);
    CHECK(doubled.fn == 4);
    CHECK(accuracy(counts) == doctest::Approx(accuracy(doubled)));
}

TEST_CASE("MI is symmetric and bounded by the smaller entropy")
{
    Xoshiro256 rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        const size_t n = 1 + rng.below(200);
        const auto u = random_clustering(rng, n, 8);
        const auto v = random_clustering(rng, n, 8);
        const double mi_uv = mutual_information(u, v);
        const double mi_vu = mutual_information(v, u);
        CHECK(mi_uv == doctest::Approx(mi_vu).epsilon(1e-12));
        CHECK(mi_uv >= -1e-12);
        CHECK(mi_uv <= std::min(entropy(u), entropy(v)) + 1e-12);
    }
}

TEST_CASE("MI matches the brute-force oracle on random instances")
{
    Xoshiro256 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const size_t n = 2 + rng.below(120);
        const auto u = random_clustering(rng, n, 6);
        const auto v = random_clustering(rng, n, 6);
        CHECK(mutual_information(u, v) == doctest::Approx(oracle_mi(u, v)).epsilon(1e-9));
    }
}

TEST_CASE("pairwise counts match enumeration and sum to N(N-1)/2")
{
    Xoshiro256 rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        const size_t n = 2 + rng.below(80);
        const auto pred = random_clustering(rng, n, 5);
        const auto ref = random_clustering(rng, n, 5);
        const auto fast = pairwise_counts(pred, ref);
        const auto slow = oracle_counts(pred, ref);
        CHECK(fast.tp == slow.tp);
        CHECK(fast.tn == slow.tn);
        CHECK(fast.fp == slow.fp);
        CHECK(fast.fn == slow.fn);
        CHECK(fast.total() == n * (n - 1) / 2);
    }
}

TEST_CASE("NMI is invariant under relabeling either side")
{
    Xoshiro256 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const size_t n = 3 + rng.below(60);
        const auto u = random_clustering(rng, n, 5);
        const auto v = random_clustering(rng, n, 5);
        Clustering permuted = v;
        for (auto &label : permuted.labels)
            label = 1000 - label * 7; // injective relabeling
        CHECK(nmi(u, v) == doctest::Approx(nmi(u, permuted)).epsilon(1e-12));
    }
}

TEST_CASE("metric report serializes every field")
{
    const auto report =
        evaluate_clustering(Clustering{{0, 0, 1}}, Clustering{{0, 0, 1}}, false);
    const std::string json = metric_report_to_json(report);
    for (const char *key : {"nmi", "mi", "entropy_pred", "entropy_ref", "tp", "tn", "fp", "fn",
                            "accuracy", "pair_convention"})
        CHECK(json.find(key) != std::string::npos);
    CHECK(report.nmi == doctest::Approx(1.0));
    CHECK(report.accuracy == doctest::Approx(1.0));
}
