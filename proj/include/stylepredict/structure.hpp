#pragma once

#include <string>
#include <vector>

#include "stylepredict/tokenizer.hpp"

namespace stylepredict {

struct FunctionFact {
    std::string name;          // simple name (last component)
    int start_line = 0;        // first signature token
    int end_line = 0;          // closing brace of the body
    int param_count = 0;
    int return_count = 0;
    bool returns_void = false;
    bool has_preceding_comment = false;
};

// Brace-structural facts recovered without a full C++ grammar. Function
// detection, if/else pairing, and declaration parsing are heuristics;
// the rules are documented on scan_structure and kept simple enough to
// apply by hand when annotating test files.
struct StructuralFacts {
    std::vector<FunctionFact> functions;

    // statement tallies
    int for_loops = 0;        // plain for
    int range_for_loops = 0;  // for with ':' at paren depth 1
    int while_loops = 0;      // excludes the trailing while of do-while
    int do_while_loops = 0;
    int if_stmts = 0;         // every if, including else-if
    int if_with_else = 0;     // ifs owning an else clause
    int else_if = 0;          // ifs directly preceded by else
    int else_plain = 0;       // else not followed by if
    int switch_stmts = 0;
    int ternary_ops = 0;
    int goto_stmts = 0;
    int break_stmts = 0;
    int continue_stmts = 0;
    int return_stmts = 0;
    int value_returns = 0;    // return with an expression
    int paren_returns = 0;    // return ( ...
    int braceless_bodies = 0; // control bodies not starting with '{'
    int control_body_sites = 0;

    // brace placement
    int open_brace_same_line = 0; // '{' preceded by code on its line
    int open_brace_own_line = 0;  // '{' first non-blank on its line
    int close_brace_own_line = 0;
    int close_braces_total = 0;

    // assignments and increments
    int plain_assignments = 0;
    int compound_assignments = 0;
    int prefix_incdec = 0;
    int postfix_incdec = 0;

    // declaration facts
    int decl_statements = 0;
    int multi_declarator_statements = 0;
    int declared_variables = 0;       // includes function parameters
    long declared_name_chars = 0;
    int declarator_stars = 0;
    int declarator_stars_type_bound = 0; // no whitespace before the '*'

    bool lint_unbalanced = false;
};

// Single pass over a lossless token stream. Tolerates unbalanced input
// (facts are best-effort and lint_unbalanced is set).
StructuralFacts scan_structure(const std::vector<Token>& tokens);

} // namespace stylepredict
