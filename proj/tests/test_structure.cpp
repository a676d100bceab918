#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "stylepredict/structure.hpp"
#include "stylepredict/tokenizer.hpp"

using namespace stylepredict;
using nlohmann::json;

namespace {

StructuralFacts scan(const std::string& src) {
    return scan_structure(tokenize(src).tokens);
}

std::string corpus_dir() {
    const char* env = std::getenv("STYLEPREDICT_CORPUS");
    REQUIRE_MESSAGE(env != nullptr, "STYLEPREDICT_CORPUS must point at tests/corpus");
    return env;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("loop counting") {
    auto f = scan("void f() { for (int i = 0; i < 3; i++) {} while (x) {} }");
    CHECK(f.for_loops == 1);
    CHECK(f.while_loops == 1);
    CHECK(f.do_while_loops == 0);
    CHECK(f.range_for_loops == 0);
}

TEST_CASE("braceless if-else bodies") {
    auto f = scan("void f() { if (x) y(); else z(); }");
    CHECK(f.if_stmts == 1);
    CHECK(f.if_with_else == 1);
    CHECK(f.else_plain == 1);
    CHECK(f.braceless_bodies == 2);
    CHECK(f.control_body_sites == 2);
}

TEST_CASE("else-if chains") {
    auto f = scan("void f() { if (a) {} else if (b) {} else {} }");
    CHECK(f.if_stmts == 2);
    CHECK(f.else_if == 1);
    CHECK(f.if_with_else == 2);
    CHECK(f.else_plain == 1);
    CHECK(f.braceless_bodies == 0);
}

TEST_CASE("do-while is not a while loop") {
    auto f = scan("void f() { do { g(); } while (x); }");
    CHECK(f.do_while_loops == 1);
    CHECK(f.while_loops == 0);
}

TEST_CASE("range-for detection") {
    auto f = scan("void f(std::vector<int>& v) { for (auto x : v) use(x); }");
    CHECK(f.range_for_loops == 1);
    CHECK(f.for_loops == 0);
    CHECK(f.braceless_bodies == 1);
}

TEST_CASE("function facts") {
    auto f = scan(
        "// adds\n"
        "int add(int a, int b) {\n"
        "    return a + b;\n"
        "}\n"
        "void reset() { counter = 0; }\n");
    REQUIRE(f.functions.size() == 2);
    CHECK(f.functions[0].name == "add");
    CHECK(f.functions[0].param_count == 2);
    CHECK(f.functions[0].return_count == 1);
    CHECK_FALSE(f.functions[0].returns_void);
    CHECK(f.functions[0].has_preceding_comment);
    CHECK(f.functions[0].start_line == 2);
    CHECK(f.functions[0].end_line == 4);
    CHECK(f.functions[1].name == "reset");
    CHECK(f.functions[1].returns_void);
    CHECK_FALSE(f.functions[1].has_preceding_comment);
}

TEST_CASE("function calls are not definitions") {
    auto f = scan("void f() { g(1); h(2, 3); }\n");
    REQUIRE(f.functions.size() == 1);
    CHECK(f.functions[0].name == "f");
}

TEST_CASE("declarations and declarators") {
    auto f = scan("void f() { int a = 1, b = 2; char* p; x = 3; }");
    CHECK(f.decl_statements == 2);
    CHECK(f.multi_declarator_statements == 1);
    CHECK(f.declared_variables == 3); // a, b, p
    CHECK(f.declarator_stars == 1);
    CHECK(f.declarator_stars_type_bound == 1); // "char* p"
    CHECK(f.plain_assignments == 3);           // two initializers + x = 3
}

TEST_CASE("pointer star binding") {
    auto bound = scan("void f() { char* p; }");
    CHECK(bound.declarator_stars_type_bound == 1);
    auto unbound = scan("void f() { char *p; }");
    CHECK(unbound.declarator_stars == 1);
    CHECK(unbound.declarator_stars_type_bound == 0);
}

TEST_CASE("unbalanced input sets the lint flag") {
    auto f = scan("void f() { if (x) { y();");
    CHECK(f.lint_unbalanced);
    CHECK(f.if_stmts == 1);
}

TEST_CASE("corpus structural facts match the hand annotations") {
    std::string dir = corpus_dir();
    const char* names[] = {"style01.cpp", "style02.c", "style03.cpp", "style04.cpp",
                           "style05.cpp", "style06.cpp", "style07.c", "style08.cpp",
                           "style09.c", "style10.cpp"};
    for (const char* name : names) {
        CAPTURE(name);
        std::string stem(name);
        stem = stem.substr(0, stem.find('.'));
        std::string src = slurp(dir + "/" + name);
        json ann = json::parse(slurp(dir + "/annotations/" + stem + ".json"));

        StructuralFacts f = scan(src);

        const json& fns = ann["functions"];
        REQUIRE(f.functions.size() == fns.size());
        for (size_t i = 0; i < fns.size(); ++i) {
            CAPTURE(i);
            CHECK(f.functions[i].name == fns[i]["name"].get<std::string>());
            CHECK(f.functions[i].start_line == fns[i]["start"].get<int>());
            CHECK(f.functions[i].end_line == fns[i]["end"].get<int>());
            CHECK(f.functions[i].param_count == fns[i]["params"].get<int>());
            CHECK(f.functions[i].return_count == fns[i]["returns"].get<int>());
            CHECK(f.functions[i].returns_void == fns[i]["void"].get<bool>());
            CHECK(f.functions[i].has_preceding_comment ==
                  fns[i]["preceded_by_comment"].get<bool>());
        }
        const json& st = ann["statements"];
        CHECK(f.for_loops == st["for"].get<int>());
        CHECK(f.range_for_loops == st["range_for"].get<int>());
        CHECK(f.while_loops == st["while"].get<int>());
        CHECK(f.do_while_loops == st["do_while"].get<int>());
        CHECK(f.if_stmts == st["if"].get<int>());
        CHECK(f.if_with_else == st["if_with_else"].get<int>());
        CHECK(f.else_if == st["else_if"].get<int>());
        CHECK(f.else_plain == st["else_plain"].get<int>());
        CHECK(f.switch_stmts == st["switch"].get<int>());
        CHECK(f.control_body_sites == st["sites"].get<int>());
        CHECK(f.braceless_bodies == st["braceless"].get<int>());

        const json& dc = ann["decls"];
        CHECK(f.decl_statements == dc["statements"].get<int>());
        CHECK(f.multi_declarator_statements == dc["multi"].get<int>());
        CHECK(f.declared_variables == dc["variables"].get<int>());
        CHECK(f.declared_name_chars == dc["name_chars"].get<long>());
        CHECK(f.declarator_stars == dc["stars"].get<int>());
        CHECK(f.declarator_stars_type_bound == dc["stars_type_bound"].get<int>());
    }
}
