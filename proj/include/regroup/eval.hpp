#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace regroup {

// A clustering as the evaluator consumes it: position = element index,
// value = group id. Ids need not be dense; metrics normalize internally.
struct Clustering {
    std::vector<int64_t> labels;

    size_t size() const { return labels.size(); }
};

struct PairwiseCounts {
    uint64_t tp = 0;
    uint64_t tn = 0;
    uint64_t fp = 0;
    uint64_t fn = 0;

    uint64_t total() const { return tp + tn + fp + fn; }
    // Ordered-pair view matching the published tables, which count each
    // unordered pair twice. Accuracy is identical under both conventions.
    PairwiseCounts doubled() const { return {tp * 2, tn * 2, fp * 2, fn * 2}; }
};

// Mutual information between two clusterings of the same elements, natural
// log. Throws Error on length mismatch or empty input.
double mutual_information(const Clustering &u, const Clustering &v);

// Shannon entropy of the cluster size distribution, natural log.
double entropy(const Clustering &u);

// MI normalized by the arithmetic mean of the two entropies, clamped to
// [0, 1]. When both entropies vanish the value is 1 for identical
// partitions and 0 otherwise.
double nmi(const Clustering &u, const Clustering &v);

// Unordered-pair confusion counts of a predicted clustering against a
// reference: tp same/same, tn diff/diff, fp pred-same/ref-diff, fn
// pred-diff/ref-same. tp+tn+fp+fn == N(N-1)/2.
PairwiseCounts pairwise_counts(const Clustering &predicted, const Clustering &reference);

// Rand index (tp+tn)/total. Throws Error when there are no pairs.
double accuracy(const PairwiseCounts &counts);

struct MetricReport {
    double nmi = 0.0;
    double mi = 0.0;
    double entropy_pred = 0.0;
    double entropy_ref = 0.0;
    PairwiseCounts counts;
    double accuracy = 0.0;
    std::string pair_convention = "unordered"; // or "doubled"
};

MetricReport evaluate_clustering(const Clustering &predicted, const Clustering &reference,
                                 bool doubled_pairs = false);

// Serialized metric report, one JSON object.
std::string metric_report_to_json(const MetricReport &report);

} // namespace regroup
