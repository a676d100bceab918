#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stylepredict/archive.hpp"
#include "stylepredict/dataset.hpp"
#include "stylepredict/errors.hpp"
#include "stylepredict/learners.hpp"
#include "stylepredict/metrics.hpp"
#include "stylepredict/pipeline.hpp"
#include "stylepredict/preprocess.hpp"
#include "stylepredict/repo_miner.hpp"
#include "stylepredict/szz.hpp"
#include "stylepredict/tokenizer.hpp"
#include "stylepredict/wilcoxon.hpp"

namespace py = pybind11;
using namespace stylepredict;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

FeatureMatrix matrix_from(DoubleArray x, const std::vector<std::string>& columns,
                          const std::vector<int>& labels) {
    if (x.ndim() != 2) throw py::value_error("expected a 2-d array");
    FeatureMatrix m;
    size_t rows = static_cast<size_t>(x.shape(0));
    size_t cols = static_cast<size_t>(x.shape(1));
    if (columns.empty()) {
        for (size_t c = 0; c < cols; ++c) m.columns.push_back("c" + std::to_string(c));
    } else {
        if (columns.size() != cols)
            throw py::value_error("columns length does not match the array width");
        m.columns = columns;
    }
    if (!labels.empty() && labels.size() != rows)
        throw py::value_error("labels length does not match the row count");
    m.rows = rows;
    m.data.assign(x.data(), x.data() + rows * cols);
    m.labels = labels;
    return m;
}

py::array_t<double> matrix_to(const FeatureMatrix& m) {
    py::array_t<double> out({m.rows, m.cols()});
    std::copy(m.data.begin(), m.data.end(), out.mutable_data());
    return out;
}

py::dict metrics_dict(const std::vector<double>& values) {
    py::dict d;
    const auto& catalog = metric_catalog();
    for (size_t i = 0; i < catalog.size(); ++i)
        d[py::str(catalog[i].id)] = values[i];
    return d;
}

py::dict evaluation_dict(const EvaluationMetrics& e) {
    py::dict d;
    d["tp"] = e.tp;
    d["fp"] = e.fp;
    d["fn"] = e.fn;
    d["tn"] = e.tn;
    d["precision"] = e.precision;
    d["recall"] = e.recall;
    d["f1"] = e.f1;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stylistic-metric defect prediction toolkit";
    m.attr("__version__") = "0.1.0";
    m.attr("CATALOG_VERSION") = kCatalogVersion;

    py::register_exception<PipelineError>(m, "PipelineError");
    py::register_exception<ConfigError>(m, "ConfigurationError");

    m.def("catalog", [] {
        std::vector<std::string> ids;
        for (const MetricDescriptor& d : metric_catalog()) ids.push_back(d.id);
        return ids;
    }, "Stable ordered list of the 60 metric ids");

    m.def("catalog_details", [] {
        py::list out;
        for (const MetricDescriptor& d : metric_catalog()) {
            py::dict e;
            e["id"] = d.id;
            e["group"] = d.group;
            e["definition"] = d.definition;
            out.append(e);
        }
        return out;
    });

    m.def("tokenize", [](const std::string& source) {
        py::list out;
        for (const Token& t : tokenize(source).tokens)
            out.append(py::make_tuple(token_kind_name(t.kind), t.text, t.line,
                                      t.column));
        return out;
    }, py::arg("source"), "Lossless token stream as (kind, text, line, column)");

    m.def("compute_metrics", [](const std::string& source) {
        return metrics_dict(compute_metrics(std::string_view(source)));
    }, py::arg("source"), "All 60 stylistic metrics for one source text");

    m.def("is_bug_fixing", [](const std::string& message) {
        auto [hit, keywords] = is_bug_fixing(message);
        return py::make_tuple(hit, keywords);
    }, py::arg("message"));

    m.def("label_archive", [](const std::string& archive_path,
                              const std::string& releases_path) {
        RepoSource repo = open_repository(archive_path);
        std::vector<Release> releases = read_releases_file(releases_path);
        KeywordMatcher matcher = KeywordMatcher::defaults();
        std::vector<BugSpan> spans;
        for (const Commit* fix : bug_fix_commits(repo.graph, matcher)) {
            auto s = trace_introducers(repo.graph, *repo.backend, *fix);
            spans.insert(spans.end(), s.begin(), s.end());
        }
        py::list out;
        for (const Release& release : releases) {
            std::vector<std::string> files;
            for (auto& [path, content] : snapshot_files(*repo.backend, release))
                files.push_back(path);
            for (const FileLabel& l :
                 label_release(repo.graph, release, spans, files)) {
                py::dict row;
                row["release"] = l.release_label;
                row["path"] = l.path;
                row["label"] = l.buggy ? "buggy" : "clean";
                out.append(row);
            }
        }
        return out;
    }, py::arg("archive"), py::arg("releases"),
       "Run bug-fix mining and SZZ labeling over a commit archive");

    m.def("vif_scores", [](DoubleArray x, std::vector<std::string> columns) {
        return vif_scores(matrix_from(x, columns, {}));
    }, py::arg("x"), py::arg("columns") = std::vector<std::string>{});

    m.def("vif_filter", [](DoubleArray x, double threshold,
                           std::vector<std::string> columns) {
        VifReport rep = vif_filter(matrix_from(x, columns, {}), threshold);
        py::dict out;
        out["kept"] = rep.kept;
        py::list removed;
        for (auto& [id, score] : rep.removed)
            removed.append(py::make_tuple(id, score));
        out["removed"] = removed;
        py::dict scores;
        for (auto& [id, score] : rep.scores) scores[py::str(id)] = score;
        out["scores"] = scores;
        return out;
    }, py::arg("x"), py::arg("threshold") = 5.0,
       py::arg("columns") = std::vector<std::string>{});

    m.def("smote", [](DoubleArray x, std::vector<int> y, int k, uint64_t seed) {
        FeatureMatrix out = smote(matrix_from(x, {}, y), k, seed);
        return py::make_tuple(matrix_to(out), out.labels);
    }, py::arg("x"), py::arg("y"), py::arg("k") = 5, py::arg("seed") = 1);

    py::class_<Model>(m, "Model")
        .def_property_readonly("algorithm",
                               [](const Model& model) {
                                   return std::string(algorithm_name(model.algorithm));
                               })
        .def("predict",
             [](const Model& model, DoubleArray x) {
                 return predict(model, matrix_from(x, model.columns, {}));
             },
             py::arg("x"))
        .def("to_json", &Model::to_json)
        .def_static("from_json", &Model::from_json);

    m.def("train", [](const std::string& algorithm, DoubleArray x,
                      std::vector<int> y, uint64_t seed) {
        return train(algorithm_from(algorithm), matrix_from(x, {}, y), Hyperparams{},
                     seed);
    }, py::arg("algorithm"), py::arg("x"), py::arg("y"), py::arg("seed") = 1);

    m.def("evaluate", [](const std::vector<int>& predicted,
                         const std::vector<int>& truth) {
        return evaluation_dict(evaluate(predicted, truth));
    }, py::arg("predicted"), py::arg("truth"));

    m.def("wilcoxon_signed_rank", [](const std::vector<double>& a,
                                     const std::vector<double>& b) {
        WilcoxonResult w = wilcoxon_signed_rank(a, b);
        py::dict d;
        d["n_effective"] = w.n_effective;
        d["w"] = w.w_statistic;
        d["p_one_sided"] = w.p_one_sided;
        d["p_two_sided"] = w.p_two_sided;
        d["significant_at_0_05"] = w.significant_at_0_05;
        d["underpowered"] = w.underpowered;
        return d;
    }, py::arg("a"), py::arg("b"));
}
