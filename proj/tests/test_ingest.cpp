#include <doctest.h>

#include <string>
#include <vector>

#include "regroup/errors.hpp"
#include "regroup/ingest.hpp"

using namespace regroup;

namespace {

DeviceProfile bucket_profile(int tx, int ty, int rx, int ry)
{
    DeviceProfile profile;
    profile.tile_bucket = GridXY{tx, ty};
    profile.region_bucket = GridXY{rx, ry};
    return profile;
}

const DeviceProfile kGrid = bucket_profile(2, 50, 50, 50);

} // namespace

TEST_CASE("parse_location extracts the trailing coordinates")
{
    const auto triple = parse_location("SLICE_X12Y34", "CLBLM_R_X10Y60", "X0Y1");
    CHECK(triple.site_xy == GridXY{12, 34});
    CHECK(triple.tile_xy == GridXY{10, 60});
    CHECK(triple.clock_region_xy == GridXY{0, 1});
    CHECK(triple.site_name == "SLICE_X12Y34");
    CHECK(triple.tile_name == "CLBLM_R_X10Y60");
}

TEST_CASE("parse_location at the origin")
{
    const auto triple = parse_location("SLICE_X0Y0", "CLBLL_L_X0Y0", "X0Y0");
    CHECK(triple.site_xy == GridXY{0, 0});
    CHECK(triple.tile_xy == GridXY{0, 0});
    CHECK(triple.clock_region_xy == GridXY{0, 0});
}

TEST_CASE("parse_location handles non-SLICE prefixes")
{
    const auto triple = parse_location("RAMB18_X1Y7", "BRAM_X6Y35", "X1Y0");
    CHECK(triple.site_xy == GridXY{1, 7});
    CHECK(triple.tile_xy == GridXY{6, 35});
    CHECK(triple.clock_region_xy == GridXY{1, 0});
}

TEST_CASE("parse_location reports the offending name")
{
    CHECK_THROWS_WITH_AS(parse_grid_xy("SLICE_12_34"), doctest::Contains("SLICE_12_34"), Error);
    CHECK_THROWS_AS(parse_grid_xy("SLICE_X1Y"), Error);
    CHECK_THROWS_AS(parse_grid_xy("SLICE_X1Y2Z"), Error);
}

TEST_CASE("derive_tile_and_region prefers exact overrides")
{
    DeviceProfile profile;
    profile.overrides["SLICE_X12Y34"] = {"CLBLM_R_X10Y60", "X0Y1"};
    const auto [tile, region] = derive_tile_and_region("SLICE_X12Y34", profile);
    CHECK(tile == "CLBLM_R_X10Y60");
    CHECK(region == "X0Y1");
}

TEST_CASE("derive_tile_and_region buckets by declared sizes")
{
    const auto profile = bucket_profile(2, 50, 999, 50);
    const auto [tile, region] = derive_tile_and_region("SLICE_X13Y101", profile);
    CHECK(tile == "X6Y2");
    CHECK(region == "X0Y2");
}

TEST_CASE("derive_tile_and_region fails without override or fallback")
{
    CHECK_THROWS_AS(derive_tile_and_region("SLICE_X0Y0", DeviceProfile{}), Error);
}

TEST_CASE("minimal FDRE instance parses with its placement")
{
    const std::string text = R"(
module top (clk, d, q);
  input clk;
  input d;
  output q;
  (* LOC = "SLICE_X0Y0" *)
  FDRE q_reg (.C(clk), .D(d), .Q(q));
endmodule
)";
    const auto doc = parse_verilog_subset(text, kGrid);
    REQUIRE(doc.cells.size() == 1);
    CHECK(doc.cells[0].cell_type == CellType::Fdre);
    CHECK(doc.cells[0].placement.site_name == "SLICE_X0Y0");
    CHECK(doc.cells[0].name == "q_reg");
    CHECK(doc.cells[0].boolean_equation.empty());
    REQUIRE(doc.nets.size() == 1); // only q is cell-driven
    CHECK(doc.nets[0].name == "q");
    CHECK(doc.nets[0].sinks.empty());
}

TEST_CASE("LUT INIT parameters canonicalize to binary masks")
{
    const std::string text = R"(
module top (a, b, o);
  input a; input b; output o;
  (* LOC = "SLICE_X1Y1" *)
  LUT2 #(.INIT(4'h8)) o_INST_0 (.I0(a), .I1(b), .O(o));
endmodule
)";
    const auto doc = parse_verilog_subset(text, kGrid);
    REQUIRE(doc.cells.size() == 1);
    CHECK(doc.cells[0].boolean_equation == "1000"); // 4'h8 expanded by hand
}

TEST_CASE("canonical_init_mask expands every base")
{
    CHECK(canonical_init_mask("4'h8", 4) == "1000");
    CHECK(canonical_init_mask("4'b0110", 4) == "0110");
    CHECK(canonical_init_mask("4'd9", 4) == "1001");
    CHECK(canonical_init_mask("8'hA5", 8) == "10100101");
    CHECK(canonical_init_mask("64'hFFFFFFFFFFFFFFFF", 64) == std::string(64, '1'));
    CHECK(canonical_init_mask("2'h3", 4) == "0011"); // zero-extended to LUT width
    CHECK(canonical_init_mask("1000", 4) == "1000"); // already canonical
    CHECK_THROWS_AS(canonical_init_mask("4'h8", 2), Error);  // does not fit
    CHECK_THROWS_AS(canonical_init_mask("4'hxz", 4), Error); // x/z unsupported
}

TEST_CASE("escaped instance names become hierarchy paths")
{
    const std::string text = R"(
module top (d, q);
  input d; output q;
  (* LOC = "SLICE_X2Y3" *)
  FDRE \core/alu/sum_reg[3] (.D(d), .Q(q));
endmodule
)";
    const auto doc = parse_verilog_subset(text, kGrid);
    REQUIRE(doc.cells.size() == 1);
    CHECK(doc.cells[0].name == "core/alu/sum_reg[3]");
    REQUIRE(doc.cells[0].hier_name.has_value());
    CHECK(*doc.cells[0].hier_name == "core/alu/sum_reg[3]");
}

TEST_CASE("unsupported constructs fail with a line number")
{
    const std::string text = "module top (q);\noutput q;\nalways @(posedge q) begin end\n"
                             "endmodule\n";
    try {
        parse_verilog_subset(text, kGrid);
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("always") != std::string::npos);
    }
}

TEST_CASE("assign with an expression is rejected")
{
    const std::string text = "module top (a, b, c);\ninput a, b; output c;\n"
                             "assign c = a & b;\nendmodule\n";
    CHECK_THROWS_AS(parse_verilog_subset(text, kGrid), ParseError);
}

TEST_CASE("identity assigns alias wires into one net")
{
    const std::string text = R"(
module top (d, q, q_alias);
  input d; output q; output q_alias;
  (* LOC = "SLICE_X0Y0" *)
  FDRE q_reg (.D(d), .Q(q));
  (* LOC = "SLICE_X0Y1" *)
  FDRE s_reg (.D(q_alias), .Q());
  assign q_alias = q;
endmodule
)";
    const auto doc = parse_verilog_subset(text, kGrid);
    REQUIRE(doc.nets.size() == 1);
    CHECK(doc.nets[0].source.pin == "Q");
    REQUIRE(doc.nets[0].sinks.size() == 1);
    CHECK(doc.nets[0].sinks[0].pin == "D");
}

TEST_CASE("DSP instances are rejected")
{
    const std::string text = "module top (q);\noutput q;\n"
                             "(* LOC = \"DSP48_X0Y0\" *)\nDSP48E1 mac (.P(q));\nendmodule\n";
    CHECK_THROWS_WITH_AS(parse_verilog_subset(text, kGrid), doctest::Contains("DSP"),
                         ParseError);
}

TEST_CASE("missing LOC names the cell")
{
    const std::string text = "module top (d, q);\ninput d; output q;\n"
                             "FDRE q_reg (.D(d), .Q(q));\nendmodule\n";
    CHECK_THROWS_WITH_AS(parse_verilog_subset(text, kGrid), doctest::Contains("q_reg"),
                         ParseError);
}

TEST_CASE("vector wires expand to indexed elements")
{
    const std::string text = R"(
module top (d, q);
  input [1:0] d;
  output [1:0] q;
  (* LOC = "SLICE_X0Y0" *) FDRE r0 (.D(d[0]), .Q(q[0]));
  (* LOC = "SLICE_X0Y1" *) FDRE r1 (.D(d[1]), .Q(q[1]));
endmodule
)";
    const auto doc = parse_verilog_subset(text, kGrid);
    REQUIRE(doc.nets.size() == 2);
    CHECK(doc.nets[0].name == "q[0]");
    CHECK(doc.nets[1].name == "q[1]");
}

TEST_CASE("undeclared and misused wires are diagnosed")
{
    const DeviceProfile &profile = kGrid;
    CHECK_THROWS_AS(parse_verilog_subset("module t (q);\noutput q;\n"
                                         "(* LOC = \"SLICE_X0Y0\" *) FDRE r (.D(nope), .Q(q));\n"
                                         "endmodule\n",
                                         profile),
                    ParseError);
    CHECK_THROWS_AS(parse_verilog_subset("module t (q);\noutput q; wire [3:0] v;\n"
                                         "(* LOC = \"SLICE_X0Y0\" *) FDRE r (.D(v), .Q(q));\n"
                                         "endmodule\n",
                                         profile),
                    ParseError);
    CHECK_THROWS_AS(parse_verilog_subset("module t (q);\noutput q; wire [3:0] v;\n"
                                         "(* LOC = \"SLICE_X0Y0\" *) FDRE r (.D(v[9]), .Q(q));\n"
                                         "endmodule\n",
                                         profile),
                    ParseError);
}

TEST_CASE("reference extraction groups words and modules")
{
    NetlistDocument doc;
    auto add = [&](const std::string &hier) {
        Cell cell;
        cell.id = static_cast<CellId>(doc.cells.size());
        cell.name = hier;
        cell.cell_type = CellType::Fdre;
        cell.placement = parse_location("SLICE_X0Y0", "T_X0Y0", "X0Y0");
        cell.hier_name = hier;
        doc.cells.push_back(cell);
    };
    add("a/b/sum_reg[3]");
    add("a/b/sum_reg[7]");
    add("a/b/x");
    add("a/c/x");
    add("top/q");

    const auto ref = extract_reference(doc);
    CHECK(ref.word_label.at(0) == ref.word_label.at(1)); // strip-index rule
    CHECK(ref.word_label.at(2) != ref.word_label.at(0));
    CHECK(ref.module_label.at(2) != ref.module_label.at(3)); // a/b vs a/c
    CHECK(ref.module_label.at(0) == ref.module_label.at(2)); // both a/b
    // "top/q" is a singleton in both labelings
    for (CellId other = 0; other < 4; ++other) {
        CHECK(ref.word_label.at(4) != ref.word_label.at(other));
        CHECK(ref.module_label.at(4) != ref.module_label.at(other));
    }
    CHECK(ref.excluded.empty());
}

TEST_CASE("cells without hierarchy names are excluded and reported")
{
    NetlistDocument doc;
    Cell cell;
    cell.id = 0;
    cell.name = "anon";
    cell.cell_type = CellType::Fdre;
    cell.placement = parse_location("SLICE_X0Y0", "T_X0Y0", "X0Y0");
    doc.cells.push_back(cell);
    const auto ref = extract_reference(doc);
    CHECK(ref.word_label.empty());
    REQUIRE(ref.excluded.size() == 1);
    CHECK(ref.excluded[0] == 0);
}

TEST_CASE("word keys strip one index and a _reg suffix")
{
    CHECK(word_key_of("a/b/sum_reg[3]") == "a/b/sum");
    CHECK(word_key_of("a/b/sum_reg") == "a/b/sum");
    CHECK(word_key_of("a/b/sum[3]") == "a/b/sum");
    CHECK(word_key_of("a/b/sum[3]_i_1") == "a/b/sum[3]_i_1");
    CHECK(module_key_of("a/b/x") == "a/b");
    CHECK(module_key_of("x") == "");
}

TEST_CASE("reference extraction is invariant under cell reordering")
{
    const std::vector<std::string> names = {"m0/w0_reg[0]", "m0/w0_reg[1]", "m1/w0_reg[0]",
                                            "m1/w1_reg[0]", "m0/w1_reg[2]"};
    auto build = [&](const std::vector<size_t> &order) {
        NetlistDocument doc;
        for (size_t i : order) {
            Cell cell;
            cell.id = static_cast<CellId>(doc.cells.size());
            cell.name = names[i];
            cell.cell_type = CellType::Fdre;
            cell.placement = parse_location("SLICE_X0Y0", "T_X0Y0", "X0Y0");
            cell.hier_name = names[i];
            doc.cells.push_back(cell);
        }
        return doc;
    };
    const auto ref1 = extract_reference(build({0, 1, 2, 3, 4}));
    const auto doc2 = build({4, 2, 0, 3, 1});
    const auto ref2 = extract_reference(doc2);

    // same partition of names, regardless of the label values
    auto key_by_name = [&](const NetlistDocument &doc, const ReferenceHierarchy &ref,
                           const std::string &a, const std::string &b) {
        auto find = [&](const std::string &name) {
            for (const auto &cell : doc.cells)
                if (cell.name == name)
                    return cell.id;
            return CellId{-1};
        };
        return ref.word_label.at(find(a)) == ref.word_label.at(find(b));
    };
    const auto doc1 = build({0, 1, 2, 3, 4});
    for (const auto &a : names)
        for (const auto &b : names)
            CHECK(key_by_name(doc1, ref1, a, b) == key_by_name(doc2, ref2, a, b));
}

TEST_CASE("JSON round trip is byte-stable from the first write")
{
    const std::string text = R"(
module top (clk, d, q);
  input clk; input d; output q;
  wire lut_o;
  (* LOC = "SLICE_X0Y0" *)
  LUT2 #(.INIT(4'h8)) \a/b/q[0]_i_1 (.I0(d), .I1(clk), .O(lut_o));
  (* LOC = "SLICE_X0Y0" *)
  FDRE \a/b/q_reg[0] (.C(clk), .D(lut_o), .Q(q));
endmodule
)";
    const auto doc = parse_verilog_subset(text, kGrid);
    const std::string once = document_to_json(doc);
    const auto reread = parse_json_text(once);
    CHECK(reread == doc);
    CHECK(document_to_json(reread) == once);
}

TEST_CASE("schema violations carry JSON pointers")
{
    CHECK_THROWS_WITH_AS(parse_json_text(R"({"format_version":"1","device":""})"),
                         doctest::Contains("/cells"), SchemaError);
    CHECK_THROWS_WITH_AS(parse_json_text(R"({"format_version":"2","device":"",
                                            "cells":[],"nets":[]})"),
                         doctest::Contains("upgrade"), SchemaError);
    const char *dsp = R"({"format_version":"1","device":"","cells":[
        {"name":"m","type":"DSP48E1","init":"","site":"SLICE_X0Y0",
         "tile":"T_X0Y0","clock_region":"X0Y0","hier_name":""}],"nets":[]})";
    CHECK_THROWS_WITH_AS(parse_json_text(dsp), doctest::Contains("/cells/0/type"), SchemaError);
    const char *bad_net = R"({"format_version":"1","device":"","cells":[
        {"name":"m","type":"FDRE","init":"","site":"SLICE_X0Y0",
         "tile":"T_X0Y0","clock_region":"X0Y0","hier_name":""}],
        "nets":[{"name":"n","source":{"cell":"ghost","pin":"Q"},"sinks":[]}]})";
    CHECK_THROWS_WITH_AS(parse_json_text(bad_net), doctest::Contains("/nets/0/source"),
                         SchemaError);
}

TEST_CASE("version 1 documents are accepted")
{
    const char *minimal = R"({"format_version":"1","device":"x","cells":[],"nets":[]})";
    const auto doc = parse_json_text(minimal);
    CHECK(doc.device == "x");
    CHECK(doc.cells.empty());
}

TEST_CASE("reference labels serialize by cell name")
{
    NetlistDocument doc;
    Cell cell;
    cell.id = 0;
    cell.name = "m0/w0_reg[0]";
    cell.cell_type = CellType::Fdre;
    cell.placement = parse_location("SLICE_X0Y0", "T_X0Y0", "X0Y0");
    cell.hier_name = cell.name;
    doc.cells.push_back(cell);

    const auto labels = labels_by_name(doc, extract_reference(doc));
    const std::string json = reference_labels_to_json(labels);
    const auto parsed = parse_reference_labels_json(json);
    CHECK(parsed.word_label.at("m0/w0_reg[0]") == 0);
    CHECK(parsed.module_label.at("m0/w0_reg[0]") == 0);
}
