#pragma once

#include <array>
#include <string>
#include <vector>

#include "stylepredict/structure.hpp"
#include "stylepredict/tokenizer.hpp"

namespace stylepredict {

inline constexpr size_t kMetricCount = 60;
inline constexpr const char* kCatalogVersion = "catalog_v1";

struct MetricDescriptor {
    std::string id;
    std::string group;      // layout | comments | naming | statements | expressions | declarations
    std::string definition; // one-line formula over the collected tallies
};

// The fixed 60-metric catalog, stable order. Metric values with a zero
// denominator are defined as 0.
const std::vector<MetricDescriptor>& metric_catalog();

// All tallies the catalog formulas draw from. Exposed so tests can pin
// individual counts against hand-annotated files.
struct MetricInputs {
    // raw line facts ('\r' is stripped from line ends before measuring)
    long total_lines = 0;
    long blank_lines = 0;
    long code_lines = 0;    // lines carrying at least one code token
    long comment_lines = 0; // lines touched by a comment token
    double line_length_sum = 0;
    double line_length_sq_sum = 0;
    long lines_over_80 = 0;
    long indented_lines = 0;
    long tab_indented_lines = 0;
    long space_indented_lines = 0;
    long indent_width_sum = 0; // tab = 4 spaces
    long trailing_ws_lines = 0;
    long blank_runs = 0;
    long blank_run_total = 0;
    long semi_lines = 0;       // lines with >= 1 code ';'
    long multi_semi_lines = 0; // lines with >= 2

    // comments
    long line_comments = 0;
    long block_comments = 0;
    long comment_chars = 0;
    long trailing_inline_comments = 0;

    // identifiers (all identifier tokens)
    long ident_total = 0;
    long ident_unique = 0;
    long ident_chars = 0;
    long ident_camel = 0;
    long ident_snake = 0;
    long ident_upper = 0;
    long ident_single = 0;
    long ident_digits = 0;
    long ident_underscore_prefix = 0;

    // operators and spacing
    long binary_ops = 0;
    long binary_ops_spaced = 0;
    long commas = 0;
    long commas_spaced = 0;
    long control_kw = 0;
    long control_kw_spaced = 0;
    long eq_neq = 0;
    long yoda_comparisons = 0;

    // literals and keywords
    long null_literals = 0; // nullptr + NULL
    long magic_numbers = 0; // numeric literals valued outside {0, 1}
    long string_literals = 0;
    long const_kw = 0;
    long auto_kw = 0;
    long define_directives = 0;
    long include_directives = 0;
    long angle_includes = 0;

    StructuralFacts structure;
};

MetricInputs collect_metric_inputs(std::string_view source);

// Evaluates the full catalog; always returns kMetricCount finite values
// in catalog order.
std::vector<double> compute_metrics(std::string_view source);
std::vector<double> compute_metrics(const MetricInputs& in);

} // namespace stylepredict
