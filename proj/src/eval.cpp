#include "regroup/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include <json.hpp>

#include "regroup/errors.hpp"

namespace regroup {

namespace {

// Dense relabeling in first-occurrence order.
std::vector<int> normalize(const Clustering &u)
{
    std::vector<int> out(u.labels.size());
    std::unordered_map<int64_t, int> ids;
    ids.reserve(u.labels.size());
    for (size_t i = 0; i < u.labels.size(); ++i) {
        auto it = ids.try_emplace(u.labels[i], static_cast<int>(ids.size())).first;
        out[i] = it->second;
    }
    return out;
}

std::vector<uint64_t> cluster_sizes(const std::vector<int> &labels)
{
    std::vector<uint64_t> sizes;
    for (int label : labels) {
        if (static_cast<size_t>(label) >= sizes.size())
            sizes.resize(static_cast<size_t>(label) + 1, 0);
        sizes[static_cast<size_t>(label)]++;
    }
    return sizes;
}

void check_lengths(const Clustering &u, const Clustering &v)
{
    if (u.labels.size() != v.labels.size())
        throw Error("clustering length mismatch: " + std::to_string(u.labels.size()) + " vs " +
                    std::to_string(v.labels.size()));
    if (u.labels.empty())
        throw Error("clustering metrics need at least one element");
}

} // namespace

double mutual_information(const Clustering &u, const Clustering &v)
{
    check_lengths(u, v);
    const auto lu = normalize(u);
    const auto lv = normalize(v);
    const auto sizes_u = cluster_sizes(lu);
    const auto sizes_v = cluster_sizes(lv);
    const double n = static_cast<double>(lu.size());

    std::map<std::pair<int, int>, uint64_t> contingency;
    for (size_t i = 0; i < lu.size(); ++i)
        contingency[{lu[i], lv[i]}]++;

    double mi = 0.0;
    for (const auto &[cell, count] : contingency) {
        const double nij = static_cast<double>(count);
        const double ai = static_cast<double>(sizes_u[static_cast<size_t>(cell.first)]);
        const double bj = static_cast<double>(sizes_v[static_cast<size_t>(cell.second)]);
        mi += (nij / n) * std::log(n * nij / (ai * bj));
    }
    return mi;
}

double entropy(const Clustering &u)
{
    if (u.labels.empty())
        throw Error("clustering metrics need at least one element");
    const auto sizes = cluster_sizes(normalize(u));
    const double n = static_cast<double>(u.labels.size());
    double h = 0.0;
    for (uint64_t size : sizes) {
        if (size == 0)
            continue;
        const double p = static_cast<double>(size) / n;
        h -= p * std::log(p);
    }
    return h;
}

double nmi(const Clustering &u, const Clustering &v)
{
    check_lengths(u, v);
    const double hu = entropy(u);
    const double hv = entropy(v);
    const double mean_h = 0.5 * (hu + hv);
    if (mean_h == 0.0) {
        // Both sides are the one-cluster partition; identical by definition,
        // but keep the comparison explicit for the degenerate convention.
        return normalize(u) == normalize(v) ? 1.0 : 0.0;
    }
    const double value = mutual_information(u, v) / mean_h;
    return std::clamp(value, 0.0, 1.0);
}

PairwiseCounts pairwise_counts(const Clustering &predicted, const Clustering &reference)
{
    check_lengths(predicted, reference);
    const auto lp = normalize(predicted);
    const auto lr = normalize(reference);
    const auto sizes_p = cluster_sizes(lp);
    const auto sizes_r = cluster_sizes(lr);

    std::map<std::pair<int, int>, uint64_t> contingency;
    for (size_t i = 0; i < lp.size(); ++i)
        contingency[{lp[i], lr[i]}]++;

    auto pairs2 = [](uint64_t k) { return k * (k - 1) / 2; };

    uint64_t same_both = 0;
    for (const auto &[cell, count] : contingency)
        same_both += pairs2(count);
    uint64_t same_pred = 0;
    for (uint64_t size : sizes_p)
        same_pred += pairs2(size);
    uint64_t same_ref = 0;
    for (uint64_t size : sizes_r)
        same_ref += pairs2(size);

    const uint64_t n = lp.size();
    const uint64_t total = pairs2(n);

    PairwiseCounts counts;
    counts.tp = same_both;
    counts.fp = same_pred - same_both;
    counts.fn = same_ref - same_both;
    counts.tn = total - counts.tp - counts.fp - counts.fn;
    return counts;
}

double accuracy(const PairwiseCounts &counts)
{
    if (counts.total() == 0)
        throw Error("accuracy undefined: no element pairs");
    return static_cast<double>(counts.tp + counts.tn) / static_cast<double>(counts.total());
}

MetricReport evaluate_clustering(const Clustering &predicted, const Clustering &reference,
                                 bool doubled_pairs)
{
    MetricReport report;
    report.mi = mutual_information(predicted, reference);
    report.nmi = nmi(predicted, reference);
    report.entropy_pred = entropy(predicted);
    report.entropy_ref = entropy(reference);
    const PairwiseCounts counts = pairwise_counts(predicted, reference);
    report.accuracy = accuracy(counts);
    report.counts = doubled_pairs ? counts.doubled() : counts;
    report.pair_convention = doubled_pairs ? "doubled" : "unordered";
    return report;
}

std::string metric_report_to_json(const MetricReport &report)
{
    nlohmann::ordered_json j;
    j["nmi"] = report.nmi;
    j["mi"] = report.mi;
    j["entropy_pred"] = report.entropy_pred;
    j["entropy_ref"] = report.entropy_ref;
    j["tp"] = report.counts.tp;
    j["tn"] = report.counts.tn;
    j["fp"] = report.counts.fp;
    j["fn"] = report.counts.fn;
    j["accuracy"] = report.accuracy;
    j["pair_convention"] = report.pair_convention;
    return j.dump(2) + "\n";
}

} // namespace regroup
