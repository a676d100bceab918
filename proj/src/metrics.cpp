#include "stylepredict/metrics.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <unordered_map>
#include <unordered_set>

namespace stylepredict {

namespace {

double ratio(double num, double den) { return den == 0 ? 0.0 : num / den; }
double pct(double num, double den) { return den == 0 ? 0.0 : 100.0 * num / den; }

bool is_code_token(const Token& t) {
    switch (t.kind) {
        case TokenKind::Identifier:
        case TokenKind::Keyword:
        case TokenKind::Number:
        case TokenKind::String:
        case TokenKind::Char:
        case TokenKind::Punctuator:
            return true;
        default:
            return false;
    }
}

int token_end_line(const Token& t) {
    int nl = 0;
    for (char c : t.text)
        if (c == '\n') ++nl;
    return t.line + nl;
}

struct IdentClass {
    bool camel = false, snake = false, upper = false;
    bool digits = false;
};

IdentClass classify_identifier(const std::string& s) {
    IdentClass c;
    bool has_lower = false, has_upper = false, has_underscore = false;
    bool only_lower_digits_us = true, only_upper_digits_us = true;
    for (char ch : s) {
        if (ch >= 'a' && ch <= 'z') has_lower = true;
        else if (ch >= 'A' && ch <= 'Z') has_upper = true;
        else if (ch == '_') has_underscore = true;
        else if (ch >= '0' && ch <= '9') c.digits = true;
        if (!((ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '_'))
            only_lower_digits_us = false;
        if (!((ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_'))
            only_upper_digits_us = false;
    }
    c.camel = has_lower && has_upper && !has_underscore;
    c.snake = has_underscore && s[0] != '_' && only_lower_digits_us && has_lower;
    c.upper = only_upper_digits_us && has_upper;
    return c;
}

// Numeric literal value test against {0, 1}; anything unparseable is
// treated as a magic number.
bool is_magic_number(const std::string& raw) {
    std::string s;
    s.reserve(raw.size());
    for (char c : raw)
        if (c != '\'') s += c;
    if (s.size() > 1 && s[0] == '0' && (s[1] == 'b' || s[1] == 'B')) {
        unsigned long long v = 0;
        size_t i = 2;
        for (; i < s.size() && (s[i] == '0' || s[i] == '1'); ++i)
            v = v * 2 + static_cast<unsigned long long>(s[i] - '0');
        for (; i < s.size(); ++i) {
            char c = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
            if (c != 'u' && c != 'l' && c != 'z') return true;
        }
        return v != 0 && v != 1;
    }
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) return true;
    for (const char* p = end; *p; ++p) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(*p)));
        if (c != 'u' && c != 'l' && c != 'z' && c != 'f') return true;
    }
    return v != 0.0 && v != 1.0;
}

bool is_literal_token(const Token& t) {
    if (t.kind == TokenKind::Number || t.kind == TokenKind::String ||
        t.kind == TokenKind::Char)
        return true;
    return t.text == "true" || t.text == "false" || t.text == "nullptr" ||
           t.text == "NULL";
}

const std::unordered_set<std::string_view> kBinaryOps = {
    "+", "-", "*", "/", "%", "<", ">", "<=", ">=", "==", "!=",
    "&&", "||", "&", "|", "^", "<<", ">>",
};

void scan_lines(std::string_view source, MetricInputs& in) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    for (size_t i = 0; i <= source.size(); ++i) {
        if (i == source.size() || source[i] == '\n') {
            if (i == source.size() && i == start) break; // no phantom final line
            std::string_view line = source.substr(start, i - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines.push_back(line);
            start = i + 1;
        }
    }

    in.total_lines = static_cast<long>(lines.size());
    long run = 0;
    for (std::string_view line : lines) {
        bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
        double len = static_cast<double>(line.size());
        in.line_length_sum += len;
        in.line_length_sq_sum += len * len;
        if (line.size() > 80) ++in.lines_over_80;
        if (!line.empty() && (line.back() == ' ' || line.back() == '\t'))
            ++in.trailing_ws_lines;
        if (blank) {
            ++in.blank_lines;
            ++run;
            continue;
        }
        if (run > 0) {
            ++in.blank_runs;
            in.blank_run_total += run;
            run = 0;
        }
        size_t indent_end = line.find_first_not_of(" \t");
        if (indent_end > 0) {
            ++in.indented_lines;
            std::string_view indent = line.substr(0, indent_end);
            bool has_tab = indent.find('\t') != std::string_view::npos;
            has_tab ? ++in.tab_indented_lines : ++in.space_indented_lines;
            for (char c : indent) in.indent_width_sum += c == '\t' ? 4 : 1;
        }
    }
    if (run > 0) {
        ++in.blank_runs;
        in.blank_run_total += run;
    }
}

void scan_tokens(const std::vector<Token>& toks, MetricInputs& in) {
    // line occupancy
    std::unordered_map<int, int> line_kind; // bit 1 = code, bit 2 = comment
    std::unordered_map<int, int> semis_per_line;
    std::unordered_set<std::string> vocab;

    // code-token index for prev/next lookups
    std::vector<size_t> code;
    for (size_t i = 0; i < toks.size(); ++i)
        if (is_code_token(toks[i])) code.push_back(i);

    auto code_pos = [&](size_t full) {
        // position of `full` within `code` (full is a code token)
        size_t lo = 0, hi = code.size();
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            if (code[mid] < full) lo = mid + 1;
            else hi = mid;
        }
        return lo;
    };

    auto spaced_before = [&](size_t full) {
        if (full == 0) return true;
        TokenKind k = toks[full - 1].kind;
        return k == TokenKind::Whitespace || k == TokenKind::Newline;
    };
    auto spaced_after = [&](size_t full) {
        if (full + 1 >= toks.size()) return true;
        TokenKind k = toks[full + 1].kind;
        return k == TokenKind::Whitespace || k == TokenKind::Newline;
    };

    for (size_t i = 0; i < toks.size(); ++i) {
        const Token& t = toks[i];
        bool code_kind = is_code_token(t) || t.kind == TokenKind::Preprocessor;
        bool comment = t.kind == TokenKind::LineComment || t.kind == TokenKind::BlockComment;
        if (code_kind || comment) {
            int endl = token_end_line(t);
            for (int ln = t.line; ln <= endl; ++ln)
                line_kind[ln] |= code_kind ? 1 : 2;
        }

        if (comment) {
            if (t.kind == TokenKind::LineComment) ++in.line_comments;
            else ++in.block_comments;
            in.comment_chars += static_cast<long>(t.text.size());
            if (line_kind[t.line] & 1) ++in.trailing_inline_comments;
            continue;
        }

        switch (t.kind) {
            case TokenKind::Identifier: {
                ++in.ident_total;
                in.ident_chars += static_cast<long>(t.text.size());
                IdentClass c = classify_identifier(t.text);
                if (c.camel) ++in.ident_camel;
                if (c.snake) ++in.ident_snake;
                if (c.upper) ++in.ident_upper;
                if (c.digits) ++in.ident_digits;
                if (t.text.size() == 1) ++in.ident_single;
                if (t.text[0] == '_') ++in.ident_underscore_prefix;
                vocab.insert(t.text);
                if (t.text == "NULL") ++in.null_literals;
                break;
            }
            case TokenKind::Keyword: {
                if (t.text == "nullptr") ++in.null_literals;
                else if (t.text == "const") ++in.const_kw;
                else if (t.text == "auto") ++in.auto_kw;
                if (t.text == "if" || t.text == "for" || t.text == "while" ||
                    t.text == "switch") {
                    ++in.control_kw;
                    if (spaced_after(i)) ++in.control_kw_spaced;
                }
                break;
            }
            case TokenKind::Number:
                if (is_magic_number(t.text)) ++in.magic_numbers;
                break;
            case TokenKind::String:
                ++in.string_literals;
                break;
            case TokenKind::Punctuator: {
                const std::string& s = t.text;
                if (s == ";") ++semis_per_line[t.line];
                if (s == ",") {
                    ++in.commas;
                    if (spaced_after(i)) ++in.commas_spaced;
                }
                if (kBinaryOps.count(s)) {
                    size_t ci = code_pos(i);
                    bool binary = false;
                    if (ci > 0) {
                        const Token& prev = toks[code[ci - 1]];
                        binary = prev.kind == TokenKind::Identifier ||
                                 prev.kind == TokenKind::Number ||
                                 prev.kind == TokenKind::String ||
                                 prev.kind == TokenKind::Char ||
                                 prev.text == ")" || prev.text == "]";
                    }
                    if (binary) {
                        ++in.binary_ops;
                        if (spaced_before(i) && spaced_after(i)) ++in.binary_ops_spaced;
                    }
                    if ((s == "==" || s == "!=") && binary) {
                        ++in.eq_neq;
                        size_t ci2 = code_pos(i);
                        bool left_lit = ci2 > 0 && is_literal_token(toks[code[ci2 - 1]]);
                        bool right_lit = ci2 + 1 < code.size() &&
                                         is_literal_token(toks[code[ci2 + 1]]);
                        if (left_lit && !right_lit) ++in.yoda_comparisons;
                    }
                }
                break;
            }
            case TokenKind::Preprocessor: {
                size_t p = 1; // past '#'
                while (p < t.text.size() &&
                       (t.text[p] == ' ' || t.text[p] == '\t')) ++p;
                size_t w = p;
                while (w < t.text.size() &&
                       std::isalpha(static_cast<unsigned char>(t.text[w]))) ++w;
                std::string word = t.text.substr(p, w - p);
                if (word == "define") ++in.define_directives;
                else if (word == "include") {
                    ++in.include_directives;
                    while (w < t.text.size() &&
                           (t.text[w] == ' ' || t.text[w] == '\t')) ++w;
                    if (w < t.text.size() && t.text[w] == '<') ++in.angle_includes;
                }
                break;
            }
            default:
                break;
        }
    }

    for (auto& [ln, kindbits] : line_kind) {
        if (kindbits & 1) ++in.code_lines;
        if (kindbits & 2) ++in.comment_lines;
    }
    for (auto& [ln, count] : semis_per_line) {
        ++in.semi_lines;
        if (count >= 2) ++in.multi_semi_lines;
    }
    in.ident_unique = static_cast<long>(vocab.size());
}

} // namespace

MetricInputs collect_metric_inputs(std::string_view source) {
    MetricInputs in;
    scan_lines(source, in);
    TokenizeResult tr = tokenize(source);
    scan_tokens(tr.tokens, in);
    in.structure = scan_structure(tr.tokens);
    return in;
}

const std::vector<MetricDescriptor>& metric_catalog() {
    static const std::vector<MetricDescriptor> catalog = {
        {"avg_line_length", "layout", "sum(line length) / total lines"},
        {"stddev_line_length", "layout", "population stddev of line length"},
        {"pct_lines_over_80_chars", "layout", "100 * lines longer than 80 / total lines"},
        {"pct_blank_lines", "layout", "100 * blank lines / total lines"},
        {"pct_indented_lines_using_tabs", "layout", "100 * tab-indented / indented lines"},
        {"pct_indented_lines_using_spaces", "layout", "100 * space-indented / indented lines"},
        {"avg_indent_width_spaces", "layout", "mean leading indent width, tab = 4"},
        {"pct_open_brace_same_line", "layout", "100 * '{' preceded by code on its line / all '{'"},
        {"pct_close_brace_own_line", "layout", "100 * '}' first on its line / all '}'"},
        {"pct_lines_trailing_whitespace", "layout", "100 * lines ending in blank / total lines"},
        {"avg_consecutive_blank_run", "layout", "mean length of maximal blank-line runs"},
        {"pct_lines_with_multiple_statements", "layout", "100 * lines with >= 2 ';' / lines with >= 1 ';'"},
        {"comment_line_density", "comments", "comment-touched lines per KLOC"},
        {"pct_line_comments", "comments", "100 * '//' comments / all comments"},
        {"pct_block_comments", "comments", "100 * '/*' comments / all comments"},
        {"avg_comment_length_chars", "comments", "mean comment token length, delimiters included"},
        {"pct_trailing_inline_comments", "comments", "100 * comments preceded by code on their line / all comments"},
        {"pct_functions_with_preceding_comment", "comments", "100 * functions with a comment directly above / functions"},
        {"avg_variable_name_length", "naming", "mean declared variable/parameter name length"},
        {"avg_function_name_length", "naming", "mean defined function name length"},
        {"pct_camel_case_identifiers", "naming", "100 * mixed-case, underscore-free identifiers / identifier uses"},
        {"pct_snake_case_identifiers", "naming", "100 * lower_snake identifiers / identifier uses"},
        {"pct_upper_snake_identifiers", "naming", "100 * UPPER_SNAKE identifiers / identifier uses"},
        {"pct_single_char_identifiers", "naming", "100 * one-char identifiers / identifier uses"},
        {"pct_identifiers_containing_digits", "naming", "100 * identifiers containing a digit / identifier uses"},
        {"pct_underscore_prefixed_identifiers", "naming", "100 * identifiers starting with '_' / identifier uses"},
        {"avg_identifier_length", "naming", "mean identifier length over all uses"},
        {"identifier_vocabulary_ratio", "naming", "unique identifiers / identifier uses"},
        {"pct_for_loops", "statements", "100 * plain for / all loops"},
        {"pct_while_loops", "statements", "100 * while / all loops"},
        {"pct_do_while_loops", "statements", "100 * do-while / all loops"},
        {"pct_range_for_loops", "statements", "100 * range-for / all loops"},
        {"pct_if_with_else", "statements", "100 * ifs owning an else / all ifs"},
        {"pct_else_if_chains", "statements", "100 * ifs directly after else / all ifs"},
        {"pct_switch_over_branching", "statements", "100 * switch / (if + switch)"},
        {"pct_ternary_over_branching", "statements", "100 * '?:' / (if + switch + '?:')"},
        {"pct_braceless_control_bodies", "statements", "100 * braceless control bodies / control bodies"},
        {"pct_multi_return_functions", "statements", "100 * functions with >= 2 returns / functions"},
        {"goto_density_per_kloc", "statements", "goto statements per KLOC"},
        {"break_continue_density_per_kloc", "statements", "break + continue per KLOC"},
        {"pct_postfix_incdec", "expressions", "100 * postfix ++/-- / all ++/--"},
        {"pct_compound_assignment", "expressions", "100 * op= / (= + op=)"},
        {"pct_spaced_binary_operators", "expressions", "100 * binary ops spaced both sides / binary ops"},
        {"pct_space_after_comma", "expressions", "100 * commas followed by space / commas"},
        {"pct_space_after_control_keyword", "expressions", "100 * if/for/while/switch followed by space / those keywords"},
        {"pct_parenthesized_return", "expressions", "100 * 'return (' / value returns"},
        {"pct_yoda_comparisons", "expressions", "100 * ==/!= with literal only on the left / all ==/!="},
        {"null_literal_density_per_kloc", "expressions", "NULL + nullptr per KLOC"},
        {"magic_number_density_per_kloc", "expressions", "numeric literals outside {0,1} per KLOC"},
        {"string_literal_density_per_kloc", "expressions", "string literals per KLOC"},
        {"functions_per_kloc", "declarations", "function definitions per KLOC"},
        {"avg_function_length_lines", "declarations", "mean function length in lines, braces inclusive"},
        {"avg_parameters_per_function", "declarations", "mean parameter count"},
        {"pct_void_functions", "declarations", "100 * void-returning functions / functions"},
        {"pct_multi_declarator_statements", "declarations", "100 * declarations declaring >= 2 names / declaration statements"},
        {"pct_pointer_star_binds_type", "declarations", "100 * declarator '*' glued to the type / declarator '*'"},
        {"const_density_per_kloc", "declarations", "'const' keywords per KLOC"},
        {"auto_density_per_kloc", "declarations", "'auto' keywords per KLOC"},
        {"macro_define_density_per_kloc", "declarations", "#define directives per KLOC"},
        {"pct_angle_bracket_includes", "declarations", "100 * #include <...> / all #include"},
    };
    return catalog;
}

std::vector<double> compute_metrics(const MetricInputs& in) {
    const StructuralFacts& st = in.structure;
    double kloc = static_cast<double>(in.code_lines) / 1000.0;
    double n = static_cast<double>(in.total_lines);

    double mean_len = ratio(in.line_length_sum, n);
    double var_len = n == 0 ? 0.0 : in.line_length_sq_sum / n - mean_len * mean_len;
    if (var_len < 0) var_len = 0;

    long comments = in.line_comments + in.block_comments;
    long opens = st.open_brace_same_line + st.open_brace_own_line;
    long loops = st.for_loops + st.range_for_loops + st.while_loops + st.do_while_loops;

    long fn_count = static_cast<long>(st.functions.size());
    long fn_commented = 0, fn_multi_return = 0, fn_void = 0;
    double fn_name_chars = 0, fn_lines = 0, fn_params = 0;
    for (const FunctionFact& f : st.functions) {
        if (f.has_preceding_comment) ++fn_commented;
        if (f.return_count >= 2) ++fn_multi_return;
        if (f.returns_void) ++fn_void;
        fn_name_chars += static_cast<double>(f.name.size());
        fn_lines += static_cast<double>(f.end_line - f.start_line + 1);
        fn_params += static_cast<double>(f.param_count);
    }

    std::vector<double> v;
    v.reserve(kMetricCount);
    // layout
    v.push_back(mean_len);
    v.push_back(std::sqrt(var_len));
    v.push_back(pct(static_cast<double>(in.lines_over_80), n));
    v.push_back(pct(static_cast<double>(in.blank_lines), n));
    v.push_back(pct(static_cast<double>(in.tab_indented_lines), static_cast<double>(in.indented_lines)));
    v.push_back(pct(static_cast<double>(in.space_indented_lines), static_cast<double>(in.indented_lines)));
    v.push_back(ratio(static_cast<double>(in.indent_width_sum), static_cast<double>(in.indented_lines)));
    v.push_back(pct(static_cast<double>(st.open_brace_same_line), static_cast<double>(opens)));
    v.push_back(pct(static_cast<double>(st.close_brace_own_line), static_cast<double>(st.close_braces_total)));
    v.push_back(pct(static_cast<double>(in.trailing_ws_lines), n));
    v.push_back(ratio(static_cast<double>(in.blank_run_total), static_cast<double>(in.blank_runs)));
    v.push_back(pct(static_cast<double>(in.multi_semi_lines), static_cast<double>(in.semi_lines)));
    // comments
    v.push_back(ratio(static_cast<double>(in.comment_lines), kloc));
    v.push_back(pct(static_cast<double>(in.line_comments), static_cast<double>(comments)));
    v.push_back(pct(static_cast<double>(in.block_comments), static_cast<double>(comments)));
    v.push_back(ratio(static_cast<double>(in.comment_chars), static_cast<double>(comments)));
    v.push_back(pct(static_cast<double>(in.trailing_inline_comments), static_cast<double>(comments)));
    v.push_back(pct(static_cast<double>(fn_commented), static_cast<double>(fn_count)));
    // naming
    v.push_back(ratio(static_cast<double>(st.declared_name_chars), static_cast<double>(st.declared_variables)));
    v.push_back(ratio(fn_name_chars, static_cast<double>(fn_count)));
    v.push_back(pct(static_cast<double>(in.ident_camel), static_cast<double>(in.ident_total)));
    v.push_back(pct(static_cast<double>(in.ident_snake), static_cast<double>(in.ident_total)));
    v.push_back(pct(static_cast<double>(in.ident_upper), static_cast<double>(in.ident_total)));
    v.push_back(pct(static_cast<double>(in.ident_single), static_cast<double>(in.ident_total)));
    v.push_back(pct(static_cast<double>(in.ident_digits), static_cast<double>(in.ident_total)));
    v.push_back(pct(static_cast<double>(in.ident_underscore_prefix), static_cast<double>(in.ident_total)));
    v.push_back(ratio(static_cast<double>(in.ident_chars), static_cast<double>(in.ident_total)));
    v.push_back(ratio(static_cast<double>(in.ident_unique), static_cast<double>(in.ident_total)));
    // statements
    v.push_back(pct(static_cast<double>(st.for_loops), static_cast<double>(loops)));
    v.push_back(pct(static_cast<double>(st.while_loops), static_cast<double>(loops)));
    v.push_back(pct(static_cast<double>(st.do_while_loops), static_cast<double>(loops)));
    v.push_back(pct(static_cast<double>(st.range_for_loops), static_cast<double>(loops)));
    v.push_back(pct(static_cast<double>(st.if_with_else), static_cast<double>(st.if_stmts)));
    v.push_back(pct(static_cast<double>(st.else_if), static_cast<double>(st.if_stmts)));
    v.push_back(pct(static_cast<double>(st.switch_stmts), static_cast<double>(st.if_stmts + st.switch_stmts)));
    v.push_back(pct(static_cast<double>(st.ternary_ops), static_cast<double>(st.if_stmts + st.switch_stmts + st.ternary_ops)));
    v.push_back(pct(static_cast<double>(st.braceless_bodies), static_cast<double>(st.control_body_sites)));
    v.push_back(pct(static_cast<double>(fn_multi_return), static_cast<double>(fn_count)));
    v.push_back(ratio(static_cast<double>(st.goto_stmts), kloc));
    v.push_back(ratio(static_cast<double>(st.break_stmts + st.continue_stmts), kloc));
    // expressions
    v.push_back(pct(static_cast<double>(st.postfix_incdec), static_cast<double>(st.prefix_incdec + st.postfix_incdec)));
    v.push_back(pct(static_cast<double>(st.compound_assignments), static_cast<double>(st.plain_assignments + st.compound_assignments)));
    v.push_back(pct(static_cast<double>(in.binary_ops_spaced), static_cast<double>(in.binary_ops)));
    v.push_back(pct(static_cast<double>(in.commas_spaced), static_cast<double>(in.commas)));
    v.push_back(pct(static_cast<double>(in.control_kw_spaced), static_cast<double>(in.control_kw)));
    v.push_back(pct(static_cast<double>(st.paren_returns), static_cast<double>(st.value_returns)));
    v.push_back(pct(static_cast<double>(in.yoda_comparisons), static_cast<double>(in.eq_neq)));
    v.push_back(ratio(static_cast<double>(in.null_literals), kloc));
    v.push_back(ratio(static_cast<double>(in.magic_numbers), kloc));
    v.push_back(ratio(static_cast<double>(in.string_literals), kloc));
    // declarations
    v.push_back(ratio(static_cast<double>(fn_count), kloc));
    v.push_back(ratio(fn_lines, static_cast<double>(fn_count)));
    v.push_back(ratio(fn_params, static_cast<double>(fn_count)));
    v.push_back(pct(static_cast<double>(fn_void), static_cast<double>(fn_count)));
    v.push_back(pct(static_cast<double>(st.multi_declarator_statements), static_cast<double>(st.decl_statements)));
    v.push_back(pct(static_cast<double>(st.declarator_stars_type_bound), static_cast<double>(st.declarator_stars)));
    v.push_back(ratio(static_cast<double>(in.const_kw), kloc));
    v.push_back(ratio(static_cast<double>(in.auto_kw), kloc));
    v.push_back(ratio(static_cast<double>(in.define_directives), kloc));
    v.push_back(pct(static_cast<double>(in.angle_includes), static_cast<double>(in.include_directives)));
    return v;
}

std::vector<double> compute_metrics(std::string_view source) {
    return compute_metrics(collect_metric_inputs(source));
}

} // namespace stylepredict
