#pragma once

#include "mwci/pipeline.hpp"
#include "mwci/search.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace mwci {

/// "1/r(e1,e2,e3)" entries separated by spaces; " / " continues the preceding
/// entry with its second-level step.
std::vector<CenterPlan> parse_bweights(const std::string& text);
std::string format_bweights(const PipelineResult& res);

std::string report_to_json(const PipelineResult& res);          // one JSON object
CandidateInput candidate_from_json_text(const std::string& text);
std::map<std::string, Annotation> load_annotations(const std::filesystem::path& file);

/// One transcribed row of a reference table (fields absent when not printed).
struct GoldenRow {
    int table = 0;
    int no = 0;
    Int alpha = 0;
    std::vector<Int> degrees, weights;
    std::string bweights;
    Rat vol;
    BigInt p2 = 0;
    std::optional<BigInt> chi;   // tables 1 and 2
    std::optional<BigInt> pg;    // tables 3 and 4
    std::optional<Int> rho;      // empty column allowed
    bool rho_column = false;     // the table carries a rho column at all
    Basket basket;
    std::optional<Rat> delta;    // tables 3 and 4
};

std::vector<GoldenRow> load_golden_table(const std::filesystem::path& file, int table_id);

struct GoldenKod2Row {
    int no = 0;
    Int a = 0, b = 0, w3 = 4, rmin = 0;
    std::map<Int, std::vector<Int>> allowed;  // modulus -> allowed residues
};

std::vector<GoldenKod2Row> load_golden_table5(const std::filesystem::path& file);

struct GoldenDiff {
    int table = 0;
    int row = 0;
    std::string field, expected, actual;
};

/// Recompute every row of tables 1-4 from (weights, degrees, B-weights) and
/// diff all printed columns; regenerate table 5's residue conditions.
std::vector<GoldenDiff> golden_compare(const std::filesystem::path& golden_dir);

/// Run one golden row through the pipeline (annotations applied).
PipelineResult run_golden_row(const GoldenRow& row,
                              const std::map<std::string, Annotation>& annotations);

std::string render_markdown_table(const std::vector<PipelineResult>& rows);
std::string render_csv_table(const std::vector<PipelineResult>& rows);

}  // namespace mwci
