#!/usr/bin/env python3
"""Golden-vector generator for the style corpus.

Produces golden/<name>.json for every corpus file from two inputs:

  * a small reference lexer implemented here, independent of the C++
    scanner, for everything that is mechanical (lines, comments,
    identifiers, literals, operators, spacing, directives);
  * the hand-written annotations/<name>.json for everything structural
    (functions, statement shapes, declarations), which were derived by
    reading the files, not by running any scanner.

Run from this directory:  python3 make_golden.py
"""

import json
import math
import os
import re

KEYWORDS = {
    "alignas", "alignof", "and", "and_eq", "asm", "auto", "bitand", "bitor",
    "bool", "break", "case", "catch", "char", "char8_t", "char16_t",
    "char32_t", "class", "compl", "concept", "const", "consteval",
    "constexpr", "constinit", "const_cast", "continue", "co_await",
    "co_return", "co_yield", "decltype", "default", "delete", "do", "double",
    "dynamic_cast", "else", "enum", "explicit", "export", "extern", "false",
    "float", "for", "friend", "goto", "if", "inline", "int", "long",
    "mutable", "namespace", "new", "noexcept", "not", "not_eq", "nullptr",
    "operator", "or", "or_eq", "private", "protected", "public", "register",
    "reinterpret_cast", "requires", "restrict", "return", "short", "signed",
    "sizeof", "static", "static_assert", "static_cast", "struct", "switch",
    "template", "this", "thread_local", "throw", "true", "try", "typedef",
    "typeid", "typename", "union", "unsigned", "using", "virtual", "void",
    "volatile", "wchar_t", "while", "xor", "xor_eq",
}

PUNCTUATORS = [
    "<<=", ">>=", "...", "->*", "<=>",
    "::", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "##", ".*",
]

IDENT_START = re.compile(r"[A-Za-z_]")
IDENT_CHAR = re.compile(r"[A-Za-z0-9_]")


def lex(src):
    """Reference lexer: list of (kind, text, line, col)."""
    toks = []
    i, line, col = 0, 1, 1
    n = len(src)
    at_line_start = True

    def advance_over(text):
        nonlocal line, col
        for ch in text:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1

    while i < n:
        start, sline, scol = i, line, col
        c = src[i]
        kind = None
        if c == "\n":
            i += 1
            kind = "newline"
        elif c in " \t\r\v\f":
            while i < n and src[i] in " \t\r\v\f":
                i += 1
            kind = "ws"
        elif c == "\\" and i + 1 < n and src[i + 1] == "\n":
            i += 2
            kind = "ws"
        elif src.startswith("//", i):
            while i < n and src[i] != "\n":
                if src[i] == "\\" and i + 1 < n and src[i + 1] == "\n":
                    i += 1
                i += 1
            kind = "line_comment"
        elif src.startswith("/*", i):
            end = src.find("*/", i + 2)
            i = n if end < 0 else end + 2
            kind = "block_comment"
        elif c == "#" and at_line_start:
            while i < n and src[i] != "\n":
                if src[i] == "\\" and i + 1 < n and src[i + 1] == "\n":
                    i += 2
                    continue
                if src.startswith("/*", i):
                    end = src.find("*/", i + 2)
                    i = n if end < 0 else end + 2
                    continue
                if src.startswith("//", i):
                    while i < n and src[i] != "\n":
                        i += 1
                    break
                i += 1
            kind = "preprocessor"
        elif c == '"' or c == "'":
            i = scan_quoted(src, i, c)
            kind = "string" if c == '"' else "char"
        elif c.isdigit() or (c == "." and i + 1 < n and src[i + 1].isdigit()):
            i = scan_number(src, i)
            kind = "number"
        elif IDENT_START.match(c) or ord(c) >= 0x80:
            j = i
            while j < n and (IDENT_CHAR.match(src[j]) or ord(src[j]) >= 0x80):
                j += 1
            word = src[i:j]
            if j < n and src[j] in "\"'":
                raw = word.endswith("R")
                prefix = word[:-1] if raw else word
                if prefix in ("", "u", "U", "L", "u8"):
                    if raw and src[j] == '"':
                        i = scan_raw(src, j)
                        kind = "string"
                    else:
                        quote = src[j]
                        i = scan_quoted(src, j, quote)
                        kind = "string" if quote == '"' else "char"
                else:
                    i = j
                    kind = "keyword" if word in KEYWORDS else "identifier"
            else:
                i = j
                kind = "keyword" if word in KEYWORDS else "identifier"
        else:
            for p in PUNCTUATORS:
                if src.startswith(p, i):
                    i += len(p)
                    break
            else:
                i += 1
            kind = "punct"
        text = src[start:i]
        advance_over(text)
        toks.append((kind, text, sline, scol))
        if kind not in ("ws", "newline"):
            at_line_start = False
        if kind == "newline":
            at_line_start = True
    assert "".join(t[1] for t in toks) == src
    return toks


def scan_quoted(src, i, quote):
    n = len(src)
    i += 1
    while i < n:
        if src[i] == "\\" and i + 1 < n:
            i += 2
            continue
        if src[i] == quote:
            i += 1
            while i < n and (IDENT_CHAR.match(src[i]) or ord(src[i]) >= 0x80):
                i += 1
            return i
        if src[i] == "\n" and quote == "'":
            return i
        i += 1
    return i


def scan_raw(src, i):
    n = len(src)
    i += 1  # opening quote
    delim = ""
    while i < n and src[i] not in "(\n":
        delim += src[i]
        i += 1
    if i >= n or src[i] != "(":
        return i
    closer = ")" + delim + '"'
    end = src.find(closer, i + 1)
    if end < 0:
        return n
    i = end + len(closer)
    while i < n and IDENT_CHAR.match(src[i]):
        i += 1
    return i


def scan_number(src, i):
    n = len(src)
    while i < n:
        c = src[i]
        if IDENT_CHAR.match(c) or c == ".":
            i += 1
            if c in "eEpP" and i < n and src[i] in "+-":
                i += 1
        elif c == "'" and i + 1 < n and src[i + 1].isalnum():
            i += 1
        else:
            break
    return i


def is_magic(text):
    s = text.replace("'", "")
    if re.fullmatch(r"0[bB][01]+[uUlLzZ]*", s):
        return int(s[2:].rstrip("uUlLzZ"), 2) not in (0, 1)
    m = re.match(r"^((0[xX][0-9a-fA-F]*(\.[0-9a-fA-F]*)?([pP][+-]?[0-9]+)?)"
                 r"|([0-9]*\.?[0-9]*([eE][+-]?[0-9]+)?))", s)
    body = m.group(0) if m else ""
    if not body:
        return True
    tail = s[len(body):]
    if not re.fullmatch(r"[uUlLzZfF]*", tail):
        return True
    try:
        v = float.fromhex(body) if body[:2].lower() == "0x" else float(body)
    except ValueError:
        try:
            v = float(int(body, 0))
        except ValueError:
            return True
    return v not in (0.0, 1.0)


BINARY_OPS = {"+", "-", "*", "/", "%", "<", ">", "<=", ">=", "==", "!=",
              "&&", "||", "&", "|", "^", "<<", ">>"}
COMPOUND = {"+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="}
OPERAND_END = {"identifier", "number", "string", "char"}
LITERAL_WORDS = {"true", "false", "nullptr", "NULL"}


def classify_ident(s):
    has_lower = any("a" <= c <= "z" for c in s)
    has_upper = any("A" <= c <= "Z" for c in s)
    has_us = "_" in s
    only_lower = all(("a" <= c <= "z") or c.isdigit() or c == "_" for c in s)
    only_upper = all(("A" <= c <= "Z") or c.isdigit() or c == "_" for c in s)
    return {
        "camel": has_lower and has_upper and not has_us,
        "snake": has_us and not s.startswith("_") and only_lower and has_lower,
        "upper": only_upper and has_upper,
    }


def collect(src, ann):
    toks = lex(src)
    code = [t for t in toks if t[0] in
            ("identifier", "keyword", "number", "string", "char", "punct")]
    code_idx = [k for k, t in enumerate(toks) if t[0] in
                ("identifier", "keyword", "number", "string", "char", "punct")]

    # ---- raw lines ----
    raw_lines = src.split("\n")
    if raw_lines and raw_lines[-1] == "":
        raw_lines.pop()
    lines = [l[:-1] if l.endswith("\r") else l for l in raw_lines]
    total = len(lines)
    blank = [not l.strip(" \t") if l else True for l in lines]
    n_blank = sum(blank)
    lens = [len(l) for l in lines]
    mean_len = sum(lens) / total if total else 0.0
    var_len = (sum(x * x for x in lens) / total - mean_len * mean_len) if total else 0.0
    var_len = max(var_len, 0.0)
    over80 = sum(1 for x in lens if x > 80)
    trailing = sum(1 for l in lines if l and l[-1] in " \t")
    indented = tabbed = spaced_ind = 0
    indent_width = 0
    for idx, l in enumerate(lines):
        if blank[idx]:
            continue
        m = re.match(r"[ \t]*", l)
        ind = m.group(0)
        if ind:
            indented += 1
            if "\t" in ind:
                tabbed += 1
            else:
                spaced_ind += 1
            indent_width += sum(4 if c == "\t" else 1 for c in ind)
    runs, run_total, run = 0, 0, 0
    for b in blank:
        if b:
            run += 1
        elif run:
            runs += 1
            run_total += run
            run = 0
    if run:
        runs += 1
        run_total += run

    # ---- line occupancy & per-line semicolons ----
    line_code = set()
    line_comment_set = set()
    semis = {}
    for kind, text, ln, _ in toks:
        endl = ln + text.count("\n")
        if kind in ("identifier", "keyword", "number", "string", "char",
                    "punct", "preprocessor"):
            for k in range(ln, endl + 1):
                line_code.add(k)
        if kind in ("line_comment", "block_comment"):
            for k in range(ln, endl + 1):
                line_comment_set.add(k)
        if kind == "punct" and text == ";":
            semis[ln] = semis.get(ln, 0) + 1
    code_lines = len(line_code)
    comment_lines = len(line_comment_set)
    kloc = code_lines / 1000.0
    semi_lines = len(semis)
    multi_semi = sum(1 for v in semis.values() if v >= 2)

    # ---- comments ----
    line_comments = block_comments = 0
    comment_chars = 0
    trailing_inline = 0
    code_seen_on = set()
    for kind, text, ln, _ in toks:
        if kind in ("line_comment", "block_comment"):
            if kind == "line_comment":
                line_comments += 1
            else:
                block_comments += 1
            comment_chars += len(text)
            if ln in code_seen_on:
                trailing_inline += 1
        if kind in ("identifier", "keyword", "number", "string", "char",
                    "punct", "preprocessor"):
            code_seen_on.add(ln)
    comments = line_comments + block_comments

    # ---- identifiers ----
    idents = [t[1] for t in code if t[0] == "identifier"]
    ident_total = len(idents)
    ident_chars = sum(len(s) for s in idents)
    uniq = len(set(idents))
    camel = snake = upper = single = digits = uprefix = 0
    for s in idents:
        c = classify_ident(s)
        camel += c["camel"]
        snake += c["snake"]
        upper += c["upper"]
        single += len(s) == 1
        digits += any(ch.isdigit() for ch in s)
        uprefix += s.startswith("_")

    # ---- operators, spacing, literals ----
    def spaced_around(full_i, before, after):
        ok_b = full_i == 0 or toks[full_i - 1][0] in ("ws", "newline")
        ok_a = full_i + 1 >= len(toks) or toks[full_i + 1][0] in ("ws", "newline")
        return (ok_b or not before) and (ok_a or not after)

    binary = binary_spaced = 0
    commas = commas_spaced = 0
    ctrl = ctrl_spaced = 0
    eq_neq = yoda = 0
    nulls = magic = strings = 0
    const_kw = auto_kw = 0
    plain_assign = compound_assign = 0
    prefix_incdec = postfix_incdec = 0
    goto_n = break_n = continue_n = return_n = 0
    value_returns = paren_returns = 0
    ternary = 0
    defines = includes = angle_includes = 0

    def is_literal(tok):
        return tok[0] in ("number", "string", "char") or tok[1] in LITERAL_WORDS

    for ci, (kind, text, ln, _) in enumerate(code):
        full_i = code_idx[ci]
        prev = code[ci - 1] if ci else None
        nxt = code[ci + 1] if ci + 1 < len(code) else None
        if kind == "identifier":
            if text == "NULL":
                nulls += 1
        elif kind == "keyword":
            if text == "nullptr":
                nulls += 1
            elif text == "const":
                const_kw += 1
            elif text == "auto":
                auto_kw += 1
            elif text == "goto":
                goto_n += 1
            elif text == "break":
                break_n += 1
            elif text == "continue":
                continue_n += 1
            elif text == "return":
                return_n += 1
                if nxt and nxt[1] != ";":
                    value_returns += 1
                    if nxt[1] == "(":
                        paren_returns += 1
            if text in ("if", "for", "while", "switch"):
                ctrl += 1
                if spaced_around(full_i, False, True):
                    ctrl_spaced += 1
        elif kind == "number":
            if is_magic(text):
                magic += 1
        elif kind == "string":
            strings += 1
        elif kind == "punct":
            if text == ",":
                commas += 1
                if spaced_around(full_i, False, True):
                    commas_spaced += 1
            elif text == "=":
                plain_assign += 1
            elif text in COMPOUND:
                compound_assign += 1
            elif text == "?":
                ternary += 1
            elif text in ("++", "--"):
                if prev and (prev[0] in ("identifier", "number") or
                             prev[1] in (")", "]")):
                    postfix_incdec += 1
                else:
                    prefix_incdec += 1
            if text in BINARY_OPS:
                is_binary = prev is not None and (
                    prev[0] in OPERAND_END or prev[1] in (")", "]"))
                if is_binary:
                    binary += 1
                    if spaced_around(full_i, True, True):
                        binary_spaced += 1
                    if text in ("==", "!="):
                        eq_neq += 1
                        left_lit = prev is not None and is_literal(prev)
                        right_lit = nxt is not None and is_literal(nxt)
                        if left_lit and not right_lit:
                            yoda += 1
    # preprocessor tokens are not in `code`; count directives separately
    for kind, text, ln, _ in toks:
        if kind != "preprocessor":
            continue
        m = re.match(r"#[ \t]*([A-Za-z]+)[ \t]*(.)?", text)
        if not m:
            continue
        if m.group(1) == "define":
            defines += 1
        elif m.group(1) == "include":
            includes += 1
            if m.group(2) == "<":
                angle_includes += 1

    # ---- brace placement ----
    open_same = open_own = close_own = close_total = 0
    cur_line, content = 0, False
    for kind, text, ln, _ in toks:
        if ln > cur_line:
            cur_line, content = ln, False
        blank_tok = kind in ("ws", "newline")
        if kind == "punct" and text == "{":
            if content:
                open_same += 1
            else:
                open_own += 1
        elif kind == "punct" and text == "}":
            close_total += 1
            if not content:
                close_own += 1
        if not blank_tok:
            content = True
        endl = ln + text.count("\n")
        if endl > cur_line:
            cur_line, content = endl, not blank_tok

    # ---- annotated structure ----
    fns = ann["functions"]
    st = ann["statements"]
    dc = ann["decls"]
    fn_count = len(fns)
    fn_commented = sum(1 for f in fns if f["preceded_by_comment"])
    fn_multi_ret = sum(1 for f in fns if f["returns"] >= 2)
    fn_void = sum(1 for f in fns if f["void"])
    fn_name_chars = sum(len(f["name"]) for f in fns)
    fn_lines = sum(f["end"] - f["start"] + 1 for f in fns)
    fn_params = sum(f["params"] for f in fns)
    loops = st["for"] + st["range_for"] + st["while"] + st["do_while"]

    def pct(a, b):
        return 100.0 * a / b if b else 0.0

    def ratio(a, b):
        return a / b if b else 0.0

    metrics = {
        "avg_line_length": mean_len,
        "stddev_line_length": math.sqrt(var_len),
        "pct_lines_over_80_chars": pct(over80, total),
        "pct_blank_lines": pct(n_blank, total),
        "pct_indented_lines_using_tabs": pct(tabbed, indented),
        "pct_indented_lines_using_spaces": pct(spaced_ind, indented),
        "avg_indent_width_spaces": ratio(indent_width, indented),
        "pct_open_brace_same_line": pct(open_same, open_same + open_own),
        "pct_close_brace_own_line": pct(close_own, close_total),
        "pct_lines_trailing_whitespace": pct(trailing, total),
        "avg_consecutive_blank_run": ratio(run_total, runs),
        "pct_lines_with_multiple_statements": pct(multi_semi, semi_lines),
        "comment_line_density": ratio(comment_lines, kloc),
        "pct_line_comments": pct(line_comments, comments),
        "pct_block_comments": pct(block_comments, comments),
        "avg_comment_length_chars": ratio(comment_chars, comments),
        "pct_trailing_inline_comments": pct(trailing_inline, comments),
        "pct_functions_with_preceding_comment": pct(fn_commented, fn_count),
        "avg_variable_name_length": ratio(dc["name_chars"], dc["variables"]),
        "avg_function_name_length": ratio(fn_name_chars, fn_count),
        "pct_camel_case_identifiers": pct(camel, ident_total),
        "pct_snake_case_identifiers": pct(snake, ident_total),
        "pct_upper_snake_identifiers": pct(upper, ident_total),
        "pct_single_char_identifiers": pct(single, ident_total),
        "pct_identifiers_containing_digits": pct(digits, ident_total),
        "pct_underscore_prefixed_identifiers": pct(uprefix, ident_total),
        "avg_identifier_length": ratio(ident_chars, ident_total),
        "identifier_vocabulary_ratio": ratio(uniq, ident_total),
        "pct_for_loops": pct(st["for"], loops),
        "pct_while_loops": pct(st["while"], loops),
        "pct_do_while_loops": pct(st["do_while"], loops),
        "pct_range_for_loops": pct(st["range_for"], loops),
        "pct_if_with_else": pct(st["if_with_else"], st["if"]),
        "pct_else_if_chains": pct(st["else_if"], st["if"]),
        "pct_switch_over_branching": pct(st["switch"], st["if"] + st["switch"]),
        "pct_ternary_over_branching": pct(ternary, st["if"] + st["switch"] + ternary),
        "pct_braceless_control_bodies": pct(st["braceless"], st["sites"]),
        "pct_multi_return_functions": pct(fn_multi_ret, fn_count),
        "goto_density_per_kloc": ratio(goto_n, kloc),
        "break_continue_density_per_kloc": ratio(break_n + continue_n, kloc),
        "pct_postfix_incdec": pct(postfix_incdec, prefix_incdec + postfix_incdec),
        "pct_compound_assignment": pct(compound_assign,
                                       plain_assign + compound_assign),
        "pct_spaced_binary_operators": pct(binary_spaced, binary),
        "pct_space_after_comma": pct(commas_spaced, commas),
        "pct_space_after_control_keyword": pct(ctrl_spaced, ctrl),
        "pct_parenthesized_return": pct(paren_returns, value_returns),
        "pct_yoda_comparisons": pct(yoda, eq_neq),
        "null_literal_density_per_kloc": ratio(nulls, kloc),
        "magic_number_density_per_kloc": ratio(magic, kloc),
        "string_literal_density_per_kloc": ratio(strings, kloc),
        "functions_per_kloc": ratio(fn_count, kloc),
        "avg_function_length_lines": ratio(fn_lines, fn_count),
        "avg_parameters_per_function": ratio(fn_params, fn_count),
        "pct_void_functions": pct(fn_void, fn_count),
        "pct_multi_declarator_statements": pct(dc["multi"], dc["statements"]),
        "pct_pointer_star_binds_type": pct(dc["stars_type_bound"], dc["stars"]),
        "const_density_per_kloc": ratio(const_kw, kloc),
        "auto_density_per_kloc": ratio(auto_kw, kloc),
        "macro_define_density_per_kloc": ratio(defines, kloc),
        "pct_angle_bracket_includes": pct(angle_includes, includes),
    }
    return metrics


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    out_dir = os.path.join(here, "golden")
    os.makedirs(out_dir, exist_ok=True)
    names = sorted(f for f in os.listdir(here)
                   if re.fullmatch(r"style\d+\.(c|cpp)", f))
    for name in names:
        stem = name.rsplit(".", 1)[0]
        with open(os.path.join(here, name), "rb") as f:
            src = f.read().decode("utf-8")
        with open(os.path.join(here, "annotations", stem + ".json")) as f:
            ann = json.load(f)
        metrics = collect(src, ann)
        with open(os.path.join(out_dir, stem + ".json"), "w") as f:
            json.dump({"file": name, "metrics": metrics}, f, indent=1)
            f.write("\n")
        print(f"wrote golden/{stem}.json")


if __name__ == "__main__":
    main()
