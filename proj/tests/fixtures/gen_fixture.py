#!/usr/bin/env python3
"""Builds the end-to-end fixture archives (orion, vega).

Each project is a synthetic eight-year history with two release tags in
the selection window, several bug-fixing commits, one merge, and one
rename. Files come in two deliberately different authoring styles, and
the files later touched by fixes are the ones written in the sloppier
style, so the style metrics carry signal about the labels.

Deterministic by construction; rerunning rewrites identical files.
Run from this directory:  python3 gen_fixture.py
"""

import json

YEAR = 31557600  # 365.25 days


def sloppy(name, k):
    lines = ["#include <stdio.h>"]
    lines.append("int " + name + "_run(int v){int r=v*37+11;if(r>250)r=r-93;"
                 "for(int i=0;i<r;i++){v+=i*3;}return v;}")
    for j in range(k):
        lines.append("int " + name + "_q%d(int a){int t=a*19;while(t>100){t-=7;}"
                     "if(t<0)t=0;return t;}" % j)
    lines.append("\tint " + name + "_tail(int z){z++;return z*5;}")
    return lines


def clean(name, k):
    lines = [
        "#include <cstdio>",
        "",
        "// " + name + " helpers, written in the calmer house style.",
        "int " + name + "_total(int count) {",
        "    int total = 0;",
        "    for (int i = 0; i < count; ++i) {",
        "        total += i;",
        "    }",
        "    return total;",
        "}",
    ]
    for j in range(k):
        lines += [
            "",
            "// scaled accessor",
            "int " + name + "_scale_%d(int value) {" % j,
            "    return value * (%d + count_offset);" % (j + 2),
            "}",
        ]
    return lines


class RepoBuilder:
    def __init__(self, t0):
        self.commits = []
        self.files = {}  # first-parent mainline state: path -> [lines]
        self.t0 = t0

    def _delta(self, path, kind, removed, added, old_path=None):
        d = {"path": path, "kind": kind}
        if old_path is not None:
            d["old_path"] = old_path
        d["removed"] = removed
        d["added"] = added
        return d

    def commit(self, cid, parents, years, message, deltas):
        self.commits.append({
            "id": cid,
            "parents": parents,
            "timestamp": self.t0 + int(years * YEAR),
            "message": message,
            "deltas": deltas,
        })

    # mainline operations (apply to self.files and emit deltas)
    def add_file(self, path, lines):
        assert path not in self.files
        self.files[path] = list(lines)
        return self._delta(path, "added", [],
                           [[i + 1, t] for i, t in enumerate(lines)])

    def remove_lines(self, path, texts):
        cur = self.files[path]
        removed = []
        for t in texts:
            idx = cur.index(t) + 1  # numbering in the pre-image
            removed.append([idx, t])
        # apply descending so stored numbers stay pre-image numbers
        for idx, _ in sorted(removed, reverse=True):
            del cur[idx - 1]
        return removed

    def insert_lines(self, path, at, texts):
        cur = self.files[path]
        for off, t in enumerate(texts):
            cur.insert(at - 1 + off, t)
        return [[at + off, t] for off, t in enumerate(texts)]

    def edit(self, path, remove_texts, insert_at, insert_texts):
        removed = self.remove_lines(path, remove_texts)
        added = self.insert_lines(path, insert_at, insert_texts) if insert_texts else []
        return self._delta(path, "modified", removed, added)

    def rename(self, old, new, remove_texts=(), insert_at=None, insert_texts=()):
        self.files[new] = self.files.pop(old)
        removed = self.remove_lines(new, list(remove_texts))
        added = self.insert_lines(new, insert_at, list(insert_texts)) if insert_texts else []
        return self._delta(new, "renamed", removed, added, old_path=old)

    def write(self, path):
        with open(path, "w") as f:
            for c in self.commits:
                f.write(json.dumps(c) + "\n")


def build_project(name, t0, sizes, releases_out, archive_out):
    r = RepoBuilder(t0)
    s = sizes  # small per-project size variation

    r.commit("c01", [], 0.0, "Initial import of " + name, [
        r.add_file("main.cpp", clean("main", s[0])),
        r.add_file("util.cpp", sloppy("util", s[1])),
        r.add_file("README.md", ["# " + name, "synthetic fixture project"]),
    ])
    r.commit("c02", ["c01"], 0.5, "Add parser and lexer", [
        r.add_file("parser.cpp", sloppy("parser", s[2])),
        r.add_file("lexer.cpp", clean("lexer", s[3])),
    ])
    r.commit("c03", ["c02"], 1.0, "Add render and audio paths", [
        r.add_file("render.cpp", sloppy("render", s[0] + 1)),
        r.add_file("audio.cpp", clean("audio", s[1] + 1)),
    ])
    # an early fix: util was buggy from c01 until here (before both releases)
    util_bug = "int util_q0(int a){int t=a*19;while(t>100){t-=7;}if(t<0)t=0;return t;}"
    r.commit("c04", ["c03"], 1.5, "Fix sign error in util helper #12", [
        r.edit("util.cpp", [util_bug], 3,
               ["int util_q0(int a){int t=a*21;while(t>90){t-=9;}return t;}"]),
    ])
    r.commit("c05", ["c04"], 2.0, "Add net and db layers", [
        r.add_file("net.cpp", sloppy("net", s[2] + 1)),
        r.add_file("db.cpp", clean("db", s[3] + 1)),
    ])
    # side branch from c04 adds gfx.cpp, merged at c06
    gfx_lines = sloppy("gfx", s[0])
    r.commit("s1", ["c04"], 2.4, "Start gfx experiments", [
        {"path": "gfx.cpp", "kind": "added", "removed": [],
         "added": [[i + 1, t] for i, t in enumerate(gfx_lines)]},
    ])
    r.files["gfx.cpp"] = list(gfx_lines)
    r.commit("c06", ["c05", "s1"], 2.6, "Merge gfx experiments branch", [
        {"path": "gfx.cpp", "kind": "added", "removed": [],
         "added": [[i + 1, t] for i, t in enumerate(gfx_lines)]},
    ])
    # parser gains the lines a later fix will blame
    r.commit("c07", ["c06"], 3.0, "Extend parser lookahead", [
        r.edit("parser.cpp", [], 2,
               ["int parser_peek(int s){int k=s*13;if(k>40)k=k-17;return k;}"]),
    ])
    r.commit("c08", ["c07"], 3.4, "Rename util to utils", [
        r.rename("util.cpp", "utils.cpp"),
    ])
    r.commit("c09", ["c08"], 4.0, "Add tools, extend render", [
        r.add_file("tools.cpp", clean("tools", s[1])),
        r.edit("render.cpp", [], 2,
               ["int render_fast(int f){int m=f*29;if(m>60)m=m-31;return m;}"]),
    ])
    r.commit("c10", ["c09"], 4.4, "Polish audio comments", [
        r.edit("audio.cpp", ["// audio helpers, written in the calmer house style."], 3,
               ["// audio helpers, tuned for the mixer rewrite."]),
    ])
    # fixes after both releases: these define the buggy files at R1/R2
    r.commit("c11", ["c10"], 5.5, "Fix overflow in parser bug #42", [
        r.edit("parser.cpp",
               ["int parser_peek(int s){int k=s*13;if(k>40)k=k-17;return k;}",
                "int parser_q0(int a){int t=a*19;while(t>100){t-=7;}if(t<0)t=0;return t;}"],
               2,
               ["int parser_peek(int s){return s*11;}"]),
    ])
    r.commit("c12", ["c11"], 6.0, "Fix crash in render and utils bounds error", [
        r.edit("render.cpp",
               ["int render_fast(int f){int m=f*29;if(m>60)m=m-31;return m;}"],
               2, ["int render_fast(int f){return f*23;}"]),
        r.edit("utils.cpp",
               ["int util_run(int v){int r=v*37+11;if(r>250)r=r-93;"
                "for(int i=0;i<r;i++){v+=i*3;}return v;}"],
               2, ["int util_run(int v){return v*41;}"]),
    ])
    r.commit("c13", ["c12"], 6.5, "Fix race in net polling, fixes #99", [
        r.edit("net.cpp",
               ["int net_run(int v){int r=v*37+11;if(r>250)r=r-93;"
                "for(int i=0;i<r;i++){v+=i*3;}return v;}"],
               2, ["int net_run(int v){return v+1;}"]),
    ])
    r.commit("c14", ["c13"], 7.0, "Fix flicker bug in gfx", [
        r.edit("gfx.cpp",
               ["int gfx_run(int v){int r=v*37+11;if(r>250)r=r-93;"
                "for(int i=0;i<r;i++){v+=i*3;}return v;}"],
               2, ["int gfx_run(int v){return v;}"]),
    ])
    r.commit("c15", ["c14"], 8.0, "Update project notes", [
        r.edit("README.md", ["synthetic fixture project"], 2,
               ["synthetic fixture project, second edition"]),
    ])

    releases = [
        {"project": name, "label": name + "-1.0", "commit_id": "c08",
         "timestamp": t0 + int(3.4 * YEAR)},
        {"project": name, "label": name + "-2.0", "commit_id": "c10",
         "timestamp": t0 + int(4.4 * YEAR)},
    ]
    r.write(archive_out)
    with open(releases_out, "w") as f:
        json.dump(releases, f, indent=1)
        f.write("\n")
    print("wrote", archive_out, "and", releases_out)


def main():
    t0_orion = 1199145600  # 2008-01-01
    t0_vega = 1205971200   # offset start for variety
    build_project("orion", t0_orion, (2, 3, 2, 1),
                  "orion_releases.json", "orion.jsonl")
    build_project("vega", t0_vega, (1, 2, 3, 2),
                  "vega_releases.json", "vega.jsonl")
    with open("pipeline.toml", "w") as f:
        f.write(
            "# Two-project fixture pipeline used by the integration tests.\n"
            "output_dir = \"out\"\n"
            "master_seed = 1\n"
            "vif_threshold = 5.0\n"
            "smote_k = 5\n"
            "project.orion.source = \"orion.jsonl\"\n"
            "project.orion.releases = \"orion_releases.json\"\n"
            "project.vega.source = \"vega.jsonl\"\n"
            "project.vega.releases = \"vega_releases.json\"\n")
    print("wrote pipeline.toml")


if __name__ == "__main__":
    main()
