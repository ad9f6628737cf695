#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "regroup/analysis.hpp"
#include "regroup/errors.hpp"
#include "regroup/eval.hpp"
#include "regroup/grouping.hpp"
#include "regroup/ingest.hpp"
#include "regroup/netlist.hpp"
#include "regroup/parallel.hpp"
#include "regroup/sha256.hpp"
#include "regroup/synth.hpp"

namespace {

constexpr const char *kToolName = "fpga-regroup";
constexpr const char *kToolVersion = "0.1.0";

using regroup::Error;

class StageTimer {
  public:
    void start() { begin_ = std::chrono::steady_clock::now(); }
    void stop(const std::string &stage)
    {
        const auto end = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(end - begin_).count();
        stages_.emplace_back(stage, ms);
        begin_ = end;
    }
    const std::vector<std::pair<std::string, double>> &stages() const { return stages_; }

  private:
    std::chrono::steady_clock::time_point begin_ = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, double>> stages_;
};

int threads_from_env()
{
    const char *env = std::getenv("FPGA_REGROUP_THREADS");
    if (!env || !*env)
        return 0; // auto
    const std::string value(env);
    if (value.find_first_not_of("0123456789") != std::string::npos || value.size() > 6)
        throw Error("FPGA_REGROUP_THREADS must be a small non-negative integer, got \"" + value +
                    "\"");
    return std::stoi(value);
}

// Every file-writing command leaves a <out>.manifest.json next to its main
// output: inputs, config echo, per-stage wall time, and output digests.
void write_manifest(const std::string &anchor_output, const std::string &command,
                    const nlohmann::ordered_json &inputs, const nlohmann::ordered_json &config,
                    const StageTimer &timer, const std::vector<std::string> &outputs)
{
    nlohmann::ordered_json manifest;
    manifest["tool"] = kToolName;
    manifest["version"] = kToolVersion;
    manifest["command"] = command;
    manifest["inputs"] = inputs;
    manifest["config"] = config;
    manifest["timings_ms"] = nlohmann::ordered_json::object();
    for (const auto &[stage, ms] : timer.stages())
        manifest["timings_ms"][stage] = ms;
    manifest["outputs"] = nlohmann::ordered_json::object();
    for (const std::string &path : outputs)
        manifest["outputs"][path] = {{"sha256", regroup::sha256_hex(regroup::read_text_file(path))}};
    regroup::write_text_file_atomic(anchor_output + ".manifest.json", manifest.dump(2) + "\n");
}

nlohmann::ordered_json threshold_json(double value)
{
    if (std::isinf(value))
        return "inf";
    return value;
}

struct GroupFlags {
    std::string netlist;
    std::string out;
    double spatial_threshold = 100.0;
    double edit_threshold = 3.0;
    int w = 5;
    std::string site_order = "lexicographic_site_name";
    int exact_node_limit = 8;
    int ged_budget = 100000;
};

regroup::GroupingConfig config_from_flags(const GroupFlags &flags)
{
    regroup::GroupingConfig config;
    config.spatial_threshold = flags.spatial_threshold;
    config.edit_threshold = flags.edit_threshold;
    config.weights = regroup::DistanceWeights(flags.w);
    config.ged_budget.exact_node_limit = flags.exact_node_limit;
    config.ged_budget.per_pair_node_budget = flags.ged_budget;
    const auto order = regroup::site_order_from_string(flags.site_order);
    if (!order)
        throw Error("unknown site order \"" + flags.site_order + "\"");
    config.site_order = *order;
    config.validate();
    return config;
}

int run_convert(const std::string &from, const std::string &to, const std::string &profile_path,
                const std::string &in_path, const std::string &out_path)
{
    if (to != "json")
        throw Error("unsupported conversion target \"" + to + "\"; only json is available");

    StageTimer timer;
    timer.start();
    regroup::NetlistDocument doc;
    if (from == "verilog") {
        if (profile_path.empty())
            throw Error("--device-profile is required for verilog input");
        const auto profile = regroup::read_device_profile(profile_path);
        std::vector<std::string> warnings;
        doc = regroup::parse_verilog_subset(regroup::read_text_file(in_path), profile, &warnings);
        for (const std::string &warning : warnings)
            std::cerr << "warning: " << warning << "\n";
    } else if (from == "json") {
        doc = regroup::read_json(in_path);
    } else {
        throw Error("unsupported conversion source \"" + from + "\"");
    }
    timer.stop("ingest");

    regroup::write_json(doc, out_path);
    timer.stop("write");

    nlohmann::ordered_json inputs{{"in", in_path}};
    if (!profile_path.empty())
        inputs["device_profile"] = profile_path;
    write_manifest(out_path, "convert", inputs, {{"from", from}, {"to", to}}, timer, {out_path});
    return 0;
}

int run_group(const GroupFlags &flags)
{
    const auto config = config_from_flags(flags);
    const int threads = threads_from_env();

    StageTimer timer;
    timer.start();
    const auto doc = regroup::read_json(flags.netlist);
    const auto graph = regroup::build_graph(doc.cells, doc.nets);
    timer.stop("ingest");

    auto sites = regroup::group_by_site(doc.cells);
    regroup::attach_subgraphs(sites, graph);
    const auto higher = regroup::group_higher(sites, config, threads);
    const auto words = regroup::group_nets(doc, config);
    for (const std::string &net : words.skipped)
        std::cerr << "warning: net \"" << net << "\" skipped: unresolvable source\n";
    timer.stop("group");

    regroup::write_text_file_atomic(
        flags.out, regroup::cluster_output_to_json(doc, sites, higher, words, config));
    timer.stop("write");

    const nlohmann::ordered_json config_echo{
        {"spatial_threshold", threshold_json(config.spatial_threshold)},
        {"edit_threshold", threshold_json(config.edit_threshold)},
        {"w", config.weights.w},
        {"site_order", to_string(config.site_order)},
        {"exact_node_limit", config.ged_budget.exact_node_limit},
        {"per_pair_node_budget", config.ged_budget.per_pair_node_budget},
        {"threads", threads}};
    write_manifest(flags.out, "group", {{"netlist", flags.netlist}}, config_echo, timer,
                   {flags.out});
    return 0;
}

std::pair<regroup::Clustering, regroup::Clustering>
align_by_reference(const regroup::ClusterAssignments &clusters,
                   const std::map<std::string, int> &reference)
{
    std::vector<std::string> missing;
    regroup::Clustering pred;
    regroup::Clustering ref;
    for (const auto &[name, label] : reference) {
        auto it = clusters.group_of_cell.find(name);
        if (it == clusters.group_of_cell.end()) {
            missing.push_back(name);
            continue;
        }
        pred.labels.push_back(it->second);
        ref.labels.push_back(label);
    }
    if (!missing.empty()) {
        std::string list;
        for (size_t i = 0; i < missing.size() && i < 10; ++i)
            list += (i ? ", " : "") + missing[i];
        if (missing.size() > 10)
            list += ", …";
        throw Error("clusters do not cover " + std::to_string(missing.size()) +
                    " referenced cells: " + list);
    }
    return {std::move(pred), std::move(ref)};
}

int run_eval(const std::string &clusters_path, const std::string &reference_path,
             const std::string &level, const std::string &pair_convention)
{
    if (level != "word" && level != "module")
        throw Error("--level must be word or module");
    if (pair_convention != "unordered" && pair_convention != "doubled")
        throw Error("--pair-convention must be unordered or doubled");

    const auto clusters = regroup::parse_cluster_json(regroup::read_text_file(clusters_path));
    const auto labels =
        regroup::parse_reference_labels_json(regroup::read_text_file(reference_path));
    const auto &reference = (level == "word") ? labels.word_label : labels.module_label;
    if (reference.empty())
        throw Error("reference labels at level " + level + " are empty");

    const auto [pred, ref] = align_by_reference(clusters, reference);
    const auto report = regroup::evaluate_clustering(pred, ref, pair_convention == "doubled");
    std::cout << regroup::metric_report_to_json(report);
    return 0;
}

std::vector<std::pair<double, double>> parse_grid(const std::string &grid)
{
    std::vector<std::pair<double, double>> points;
    std::string entry;
    std::istringstream stream(grid);
    while (std::getline(stream, entry, ',')) {
        const size_t colon = entry.find(':');
        if (colon == std::string::npos)
            throw Error("malformed grid entry \"" + entry + "\"; expected spatial:edit");
        try {
            size_t used = 0;
            const double spatial = std::stod(entry.substr(0, colon), &used);
            if (used != colon)
                throw std::invalid_argument(entry);
            const std::string edit_text = entry.substr(colon + 1);
            const double edit = std::stod(edit_text, &used);
            if (used != edit_text.size())
                throw std::invalid_argument(entry);
            points.emplace_back(spatial, edit);
        } catch (const std::logic_error &) {
            throw Error("malformed grid entry \"" + entry + "\"; expected spatial:edit");
        }
    }
    if (points.empty())
        throw Error("threshold grid is empty");
    return points;
}

int run_sweep(const std::string &netlist_path, const std::string &reference_path,
              const std::string &grid, const std::string &level, const std::string &out_path)
{
    if (level != "word" && level != "module")
        throw Error("--level must be word or module");
    const auto points = parse_grid(grid);
    const int threads = threads_from_env();

    StageTimer timer;
    timer.start();
    const auto doc = regroup::read_json(netlist_path);
    const auto graph = regroup::build_graph(doc.cells, doc.nets);
    const auto labels =
        regroup::parse_reference_labels_json(regroup::read_text_file(reference_path));
    const auto &reference = (level == "word") ? labels.word_label : labels.module_label;
    auto sites = regroup::group_by_site(doc.cells);
    regroup::attach_subgraphs(sites, graph);
    std::unordered_map<std::string, regroup::CellId> id_of_name;
    for (const auto &cell : doc.cells)
        id_of_name.emplace(cell.name, cell.id);
    timer.stop("ingest");

    std::string csv = "spatial_threshold,edit_threshold,nmi,accuracy,group_count,runtime_ms\n";
    for (const auto &[spatial, edit] : points) {
        regroup::GroupingConfig config;
        config.spatial_threshold = spatial;
        config.edit_threshold = edit;
        config.validate();

        const auto begin = std::chrono::steady_clock::now();
        const auto higher = regroup::group_higher(sites, config, threads);
        const auto end = std::chrono::steady_clock::now();
        const double runtime_ms = std::chrono::duration<double, std::milli>(end - begin).count();

        const auto clustering =
            regroup::flatten_to_clustering(higher, sites, doc.cells.size());
        regroup::Clustering pred;
        regroup::Clustering ref;
        for (const auto &[name, label] : reference) {
            auto it = id_of_name.find(name);
            if (it == id_of_name.end())
                throw Error("reference cell \"" + name + "\" is not in the netlist");
            pred.labels.push_back(clustering.labels[static_cast<size_t>(it->second)]);
            ref.labels.push_back(label);
        }
        const double nmi_value = regroup::nmi(pred, ref);
        const double acc = regroup::accuracy(regroup::pairwise_counts(pred, ref));

        char row[160];
        std::snprintf(row, sizeof(row), "%g,%g,%.6f,%.6f,%zu,%.0f\n", spatial, edit, nmi_value,
                      acc, higher.size(), runtime_ms);
        csv += row;
    }
    timer.stop("sweep");

    regroup::write_text_file_atomic(out_path, csv);
    timer.stop("write");
    write_manifest(out_path, "sweep",
                   {{"netlist", netlist_path}, {"reference", reference_path}},
                   {{"grid", grid}, {"level", level}, {"threads", threads}}, timer, {out_path});
    return 0;
}

int run_gen(const std::string &spec_path, const std::string &out_path,
            const std::string &labels_path)
{
    StageTimer timer;
    timer.start();
    const auto spec = regroup::parse_synth_spec_json(regroup::read_text_file(spec_path));
    const auto design = regroup::generate(spec);
    timer.stop("generate");

    regroup::write_json(design.doc, out_path);
    const auto labels = regroup::labels_by_name(design.doc, design.reference);
    regroup::write_text_file_atomic(labels_path, regroup::reference_labels_to_json(labels));
    timer.stop("write");

    write_manifest(out_path, "gen", {{"spec", spec_path}},
                   nlohmann::ordered_json::parse(regroup::synth_spec_to_json(spec)), timer,
                   {out_path, labels_path});
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"placed-netlist regrouping: site/word/module recovery and evaluation"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    std::function<int()> action;

    // convert
    auto *convert = app.add_subcommand("convert", "convert a netlist to the JSON interchange");
    std::string cv_from, cv_to = "json", cv_profile, cv_in, cv_out;
    convert->add_option("--from", cv_from, "input format")
        ->required()
        ->check(CLI::IsMember({"verilog", "json"}));
    convert->add_option("--to", cv_to, "output format")->check(CLI::IsMember({"json"}));
    convert->add_option("--device-profile", cv_profile, "site->tile/region profile JSON");
    convert->add_option("in", cv_in, "input file")->required();
    convert->add_option("out", cv_out, "output file")->required();
    convert->callback([&] { action = [&] { return run_convert(cv_from, cv_to, cv_profile, cv_in, cv_out); }; });

    // group
    auto *group = app.add_subcommand("group", "run site and higher-level grouping");
    GroupFlags gf;
    group->add_option("--netlist", gf.netlist, "interchange JSON netlist")->required();
    group->add_option("--spatial-threshold", gf.spatial_threshold,
                      "average spatial distance threshold");
    group->add_option("--edit-threshold", gf.edit_threshold, "average edit distance threshold");
    group->add_option("--w", gf.w, "distance weight base");
    group->add_option("--site-order", gf.site_order, "site processing order")
        ->check(CLI::IsMember({"input_order", "lexicographic_site_name", "coordinate_raster"}));
    group->add_option("--exact-node-limit", gf.exact_node_limit,
                      "largest subgraph solved exactly");
    group->add_option("--ged-budget", gf.ged_budget, "A* expansion budget per pair");
    group->add_option("--out", gf.out, "cluster output JSON path")->required();
    group->callback([&] { action = [&] { return run_group(gf); }; });

    // eval
    auto *eval = app.add_subcommand("eval", "score clusters against reference labels");
    std::string ev_clusters, ev_reference, ev_level = "module",
                       ev_convention = "unordered";
    eval->add_option("--clusters", ev_clusters, "cluster output JSON")->required();
    eval->add_option("--reference", ev_reference, "reference labels JSON")->required();
    eval->add_option("--level", ev_level, "reference level")
        ->check(CLI::IsMember({"word", "module"}));
    eval->add_option("--pair-convention", ev_convention, "pair counting view")
        ->check(CLI::IsMember({"unordered", "doubled"}));
    eval->callback(
        [&] { action = [&] { return run_eval(ev_clusters, ev_reference, ev_level, ev_convention); }; });

    // sweep
    auto *sweep = app.add_subcommand("sweep", "threshold grid sweep, CSV output");
    std::string sw_netlist, sw_reference, sw_grid = "30:10,50:5,80:5,100:3,120:8",
                       sw_level = "module", sw_out;
    sweep->add_option("--netlist", sw_netlist, "interchange JSON netlist")->required();
    sweep->add_option("--reference", sw_reference, "reference labels JSON")->required();
    sweep->add_option("--grid", sw_grid, "comma-separated spatial:edit pairs");
    sweep->add_option("--level", sw_level, "reference level")
        ->check(CLI::IsMember({"word", "module"}));
    sweep->add_option("--out", sw_out, "CSV output path")->required();
    sweep->callback([&] {
        action = [&] { return run_sweep(sw_netlist, sw_reference, sw_grid, sw_level, sw_out); };
    });

    // gen
    auto *gen = app.add_subcommand("gen", "generate a synthetic placed netlist");
    std::string gn_spec, gn_out, gn_labels;
    gen->add_option("--spec", gn_spec, "fixture spec JSON")->required();
    gen->add_option("--out", gn_out, "netlist JSON output path")->required();
    gen->add_option("--labels", gn_labels, "reference labels JSON output path")->required();
    gen->callback([&] { action = [&] { return run_gen(gn_spec, gn_out, gn_labels); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action ? action() : 2;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
