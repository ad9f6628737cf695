#include <doctest.h>

#include <limits>
#include <set>

#include "regroup/analysis.hpp"
#include "regroup/errors.hpp"
#include "regroup/grouping.hpp"
#include "regroup/synth.hpp"

using namespace regroup;

namespace {

SynthSpec basic_spec()
{
    SynthSpec spec;
    spec.module_count = 1;
    spec.words_per_module = 1;
    spec.word_width = 4;
    spec.cell_pattern = CellPattern::FfWord;
    spec.seed = 7;
    return spec;
}

Clustering reference_clustering(const std::map<CellId, int> &labels, size_t n_cells)
{
    Clustering c;
    c.labels.assign(n_cells, 0);
    for (const auto &[id, label] : labels)
        c.labels[static_cast<size_t>(id)] = label;
    return c;
}

double module_nmi(const NetlistDocument &doc, const ReferenceHierarchy &reference)
{
    auto sites = group_by_site(doc.cells);
    attach_subgraphs(sites, build_graph(doc.cells, doc.nets));
    const auto higher = group_higher(sites, GroupingConfig{});
    const auto predicted = flatten_to_clustering(higher, sites, doc.cells.size());
    return nmi(predicted, reference_clustering(reference.module_label, doc.cells.size()));
}

} // namespace

TEST_CASE("a one-word ff fixture is four cells in a column")
{
    const auto design = generate(basic_spec());
    REQUIRE(design.doc.cells.size() == 4);
    std::set<std::string> sites;
    std::set<int> xs;
    for (const auto &cell : design.doc.cells) {
        sites.insert(cell.placement.site_name);
        xs.insert(cell.placement.site_xy.x);
        CHECK(cell.cell_type == CellType::Fdre);
    }
    CHECK(sites.size() == 4);
    CHECK(xs.size() == 1); // a column
    std::set<int> words;
    for (const auto &[id, label] : design.reference.word_label)
        words.insert(label);
    CHECK(words.size() == 1);
}

TEST_CASE("generation is a pure function of the spec")
{
    SynthSpec spec = basic_spec();
    spec.module_count = 3;
    spec.words_per_module = 2;
    spec.placement_noise = 1;
    spec.cell_pattern = CellPattern::LutFfWord;
    spec.seed = 123456789;
    const auto a = generate(spec);
    const auto b = generate(spec);
    CHECK(a.doc == b.doc);
    CHECK(document_to_json(a.doc) == document_to_json(b.doc));
}

TEST_CASE("region_spread modules sit at least one region step apart")
{
    SynthSpec spec = basic_spec();
    spec.module_count = 2;
    spec.region_spread = true;
    const auto design = generate(spec);
    const DistanceWeights weights(5);
    int64_t min_distance = std::numeric_limits<int64_t>::max();
    for (const auto &a : design.doc.cells) {
        for (const auto &b : design.doc.cells) {
            if (design.reference.module_label.at(a.id) == design.reference.module_label.at(b.id))
                continue;
            min_distance =
                std::min(min_distance, spatial_distance(a.placement, b.placement, weights));
        }
    }
    CHECK(min_distance >= 25);
}

TEST_CASE("planted labels agree with hierarchical-name extraction")
{
    SynthSpec spec = basic_spec();
    spec.module_count = 2;
    spec.words_per_module = 2;
    spec.word_width = 3;
    spec.cell_pattern = CellPattern::CarryChainWord;
    const auto design = generate(spec);
    const auto extracted = extract_reference(design.doc);
    REQUIRE(extracted.word_label.size() == design.reference.word_label.size());
    // same partitions, labels possibly renamed
    const size_t n = design.doc.cells.size();
    const auto planted_w = reference_clustering(design.reference.word_label, n);
    const auto extracted_w = reference_clustering(extracted.word_label, n);
    CHECK(nmi(planted_w, extracted_w) == doctest::Approx(1.0));
    const auto planted_m = reference_clustering(design.reference.module_label, n);
    const auto extracted_m = reference_clustering(extracted.module_label, n);
    CHECK(nmi(planted_m, extracted_m) == doctest::Approx(1.0));
}

TEST_CASE("words of one module share a module label and words stay consistent")
{
    SynthSpec spec = basic_spec();
    spec.module_count = 3;
    spec.words_per_module = 2;
    spec.word_width = 5;
    spec.cell_pattern = CellPattern::LutFfWord;
    const auto design = generate(spec);
    std::map<int, std::set<int>> modules_of_word;
    for (const auto &[id, word] : design.reference.word_label)
        modules_of_word[word].insert(design.reference.module_label.at(id));
    for (const auto &[word, modules] : modules_of_word)
        CHECK(modules.size() == 1);
    std::set<int> words;
    for (const auto &[id, word] : design.reference.word_label)
        words.insert(word);
    CHECK(words.size() == 6); // 3 modules x 2 words
}

TEST_CASE("carry chains connect bit i to bit i+1")
{
    SynthSpec spec = basic_spec();
    spec.cell_pattern = CellPattern::CarryChainWord;
    spec.word_width = 4;
    const auto design = generate(spec);
    int carry_nets = 0;
    for (const auto &net : design.doc.nets)
        if (net.name.find("_co[") != std::string::npos) {
            ++carry_nets;
            REQUIRE(net.sinks.size() == 1);
            CHECK(net.sinks[0].pin == "CI");
        }
    CHECK(carry_nets == 3);
}

TEST_CASE("ablation collapses every spatial distance to zero")
{
    SynthSpec spec = basic_spec();
    spec.module_count = 2;
    spec.region_spread = true;
    const auto design = generate(spec);
    const auto ablated = ablate_location(design.doc);
    const DistanceWeights weights(5);
    for (const auto &a : ablated.cells)
        for (const auto &b : ablated.cells)
            CHECK(spatial_distance(a.placement, b.placement, weights) == 0);
    // site names stay distinct, so site groups are unchanged
    CHECK(group_by_site(ablated.cells).size() == group_by_site(design.doc.cells).size());
}

TEST_CASE("ablated documents still round-trip the interchange format")
{
    const auto design = generate(basic_spec());
    const auto ablated = ablate_location(design.doc);
    const std::string json = document_to_json(ablated);
    const auto reread = parse_json_text(json);
    CHECK(reread == ablated);
    CHECK(document_to_json(reread) == json);
}

TEST_CASE("removing location strictly hurts recovery of replicated modules")
{
    SynthSpec spec = basic_spec();
    spec.module_count = 4;
    spec.words_per_module = 1;
    spec.word_width = 6;
    spec.cell_pattern = CellPattern::LutFfWord;
    spec.region_spread = true;
    const auto design = generate(spec);
    const double with_location = module_nmi(design.doc, design.reference);
    const double without_location = module_nmi(ablate_location(design.doc), design.reference);
    CHECK(with_location > without_location);
}

TEST_CASE("specs that do not fit the grid are rejected")
{
    SynthSpec spec = basic_spec();
    spec.module_count = 40;
    CHECK_THROWS_WITH_AS(generate(spec), doctest::Contains("grid"), Error);

    SynthSpec tall = basic_spec();
    tall.region_spread = true;
    tall.word_width = 70;
    CHECK_THROWS_AS(generate(tall), Error);

    SynthSpec wide = basic_spec();
    wide.region_spread = true;
    wide.module_count = 5;
    CHECK_THROWS_AS(generate(wide), Error);
}

TEST_CASE("fixture specs round-trip JSON and validate")
{
    SynthSpec spec = basic_spec();
    spec.cell_pattern = CellPattern::CarryChainWord;
    spec.word_gap = 3;
    const auto parsed = parse_synth_spec_json(synth_spec_to_json(spec));
    CHECK(parsed.module_count == spec.module_count);
    CHECK(parsed.cell_pattern == spec.cell_pattern);
    CHECK(parsed.word_gap == 3);
    CHECK_THROWS_AS(parse_synth_spec_json("{}"), SchemaError);
    CHECK_THROWS_AS(parse_synth_spec_json("not json"), Error);
    SynthSpec bad = basic_spec();
    bad.word_width = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
}
