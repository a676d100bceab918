#include "stylepredict/learners.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numeric>

#include "stylepredict/errors.hpp"
#include "stylepredict/rng.hpp"

namespace stylepredict {

namespace {

using nlohmann::ordered_json;

void check_trainable(const FeatureMatrix& m) {
    if (!m.has_labels()) throw PipelineError("training data has no labels");
    m.validate_finite();
    long pos = 0, neg = 0;
    for (int y : m.labels) y == 1 ? ++pos : ++neg;
    if (pos == 0 || neg == 0)
        throw PipelineError("training data contains a single class");
}

// ---- naive bayes ----------------------------------------------------------

NaiveBayesParams train_nb(const FeatureMatrix& m, const Hyperparams& hp) {
    size_t d = m.cols();
    NaiveBayesParams p;
    long counts[2] = {0, 0};
    for (int c = 0; c < 2; ++c) {
        p.mean[c].assign(d, 0.0);
        p.variance[c].assign(d, 0.0);
    }
    for (size_t r = 0; r < m.rows; ++r) {
        int y = m.labels[r];
        ++counts[y];
        for (size_t c = 0; c < d; ++c) p.mean[y][c] += m.at(r, c);
    }
    for (int y = 0; y < 2; ++y)
        for (size_t c = 0; c < d; ++c) p.mean[y][c] /= static_cast<double>(counts[y]);
    for (size_t r = 0; r < m.rows; ++r) {
        int y = m.labels[r];
        for (size_t c = 0; c < d; ++c) {
            double diff = m.at(r, c) - p.mean[y][c];
            p.variance[y][c] += diff * diff;
        }
    }
    for (int y = 0; y < 2; ++y)
        for (size_t c = 0; c < d; ++c) {
            p.variance[y][c] /= static_cast<double>(counts[y]);
            p.variance[y][c] = std::max(p.variance[y][c], hp.nb_variance_floor);
        }
    double n = static_cast<double>(m.rows);
    p.prior[0] = static_cast<double>(counts[0]) / n;
    p.prior[1] = static_cast<double>(counts[1]) / n;
    return p;
}

int predict_nb(const NaiveBayesParams& p, const FeatureMatrix& m, size_t r) {
    double log_like[2];
    for (int y = 0; y < 2; ++y) {
        double ll = std::log(p.prior[y]);
        for (size_t c = 0; c < p.mean[y].size(); ++c) {
            double var = p.variance[y][c];
            double diff = m.at(r, c) - p.mean[y][c];
            ll += -0.5 * std::log(2.0 * M_PI * var) - diff * diff / (2.0 * var);
        }
        log_like[y] = ll;
    }
    // posterior(buggy) >= 0.5  <=>  log_like[1] >= log_like[0]
    return log_like[1] >= log_like[0] ? 1 : 0;
}

// ---- decision tree --------------------------------------------------------

double gini(long n0, long n1) {
    long n = n0 + n1;
    if (n == 0) return 0;
    double p0 = static_cast<double>(n0) / static_cast<double>(n);
    double p1 = static_cast<double>(n1) / static_cast<double>(n);
    return 1.0 - p0 * p0 - p1 * p1;
}

struct SplitChoice {
    bool found = false;
    size_t feature = 0;
    double threshold = 0;
    double impurity = 0; // weighted child impurity
};

SplitChoice best_split(const FeatureMatrix& m, const std::vector<size_t>& rows) {
    SplitChoice best;
    long total[2] = {0, 0};
    for (size_t r : rows) ++total[m.labels[r]];

    std::vector<std::pair<double, int>> vals(rows.size());
    for (size_t c = 0; c < m.cols(); ++c) {
        for (size_t i = 0; i < rows.size(); ++i)
            vals[i] = {m.at(rows[i], c), m.labels[rows[i]]};
        std::sort(vals.begin(), vals.end());
        long left[2] = {0, 0};
        for (size_t i = 0; i + 1 < vals.size(); ++i) {
            ++left[vals[i].second];
            if (vals[i].first == vals[i + 1].first) continue; // not a boundary
            double threshold = vals[i].first + (vals[i + 1].first - vals[i].first) / 2.0;
            long ln = static_cast<long>(i) + 1;
            long rn = static_cast<long>(vals.size()) - ln;
            long l1 = left[1], l0 = left[0];
            long r1 = total[1] - l1, r0 = total[0] - l0;
            double w = (static_cast<double>(ln) * gini(l0, l1) +
                        static_cast<double>(rn) * gini(r0, r1)) /
                       static_cast<double>(vals.size());
            // strict improvement keeps the earliest feature/threshold on ties
            if (!best.found || w < best.impurity - 1e-15) {
                best.found = true;
                best.feature = c;
                best.threshold = threshold;
                best.impurity = w;
            }
        }
    }
    return best;
}

int grow_tree(TreeParams& tree, const FeatureMatrix& m, std::vector<size_t> rows,
              int depth, const Hyperparams& hp) {
    TreeNode node;
    for (size_t r : rows) ++node.count[m.labels[r]];
    bool pure = node.count[0] == 0 || node.count[1] == 0;
    bool can_split = depth < hp.dt_max_depth &&
                     static_cast<long>(rows.size()) >= hp.dt_min_samples_split && !pure;
    SplitChoice split;
    if (can_split) split = best_split(m, rows);

    int index = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(node);
    if (!can_split || !split.found) {
        // ties toward buggy
        tree.nodes[index].leaf_class = node.count[1] >= node.count[0] ? 1 : 0;
        return index;
    }
    std::vector<size_t> left_rows, right_rows;
    for (size_t r : rows) {
        if (m.at(r, split.feature) <= split.threshold) left_rows.push_back(r);
        else right_rows.push_back(r);
    }
    tree.nodes[index].feature = static_cast<int>(split.feature);
    tree.nodes[index].threshold = split.threshold;
    int l = grow_tree(tree, m, std::move(left_rows), depth + 1, hp);
    int r = grow_tree(tree, m, std::move(right_rows), depth + 1, hp);
    tree.nodes[index].left = l;
    tree.nodes[index].right = r;
    return index;
}

TreeParams train_dt(const FeatureMatrix& m, const Hyperparams& hp) {
    TreeParams tree;
    std::vector<size_t> rows(m.rows);
    std::iota(rows.begin(), rows.end(), 0);
    grow_tree(tree, m, std::move(rows), 0, hp);
    return tree;
}

int predict_dt(const TreeParams& tree, const FeatureMatrix& m, size_t r) {
    int i = 0;
    while (tree.nodes[i].feature >= 0) {
        const TreeNode& n = tree.nodes[i];
        i = m.at(r, static_cast<size_t>(n.feature)) <= n.threshold ? n.left : n.right;
    }
    return tree.nodes[i].leaf_class;
}

// ---- linear svm (pegasos-style subgradient descent) -----------------------

LinearParams train_svm(const FeatureMatrix& m, const Hyperparams& hp, uint64_t seed) {
    size_t d = m.cols();
    LinearParams p;
    p.weights.assign(d, 0.0);
    SeededRng rng(mix_seed(seed, "svm-shuffle"));
    std::vector<size_t> order(m.rows);
    std::iota(order.begin(), order.end(), 0);
    double lambda = hp.svm_lambda;
    long t = 0;
    for (int epoch = 0; epoch < hp.svm_epochs; ++epoch) {
        rng.shuffle(order);
        for (size_t r : order) {
            ++t;
            double eta = 1.0 / (lambda * static_cast<double>(t));
            double y = m.labels[r] == 1 ? 1.0 : -1.0;
            double score = p.bias;
            for (size_t c = 0; c < d; ++c) score += p.weights[c] * m.at(r, c);
            double decay = 1.0 - eta * lambda;
            for (size_t c = 0; c < d; ++c) p.weights[c] *= decay;
            if (y * score < 1.0) {
                for (size_t c = 0; c < d; ++c) p.weights[c] += eta * y * m.at(r, c);
                p.bias += eta * y; // bias stays unregularized
            }
        }
    }
    return p;
}

// ---- logistic regression (full-batch gradient descent) --------------------

LinearParams train_lr(const FeatureMatrix& m, const Hyperparams& hp) {
    size_t d = m.cols();
    LinearParams p;
    p.weights.assign(d, 0.0);
    double n = static_cast<double>(m.rows);
    std::vector<double> grad(d);
    for (int epoch = 0; epoch < hp.lr_epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double grad_b = 0;
        for (size_t r = 0; r < m.rows; ++r) {
            double z = p.bias;
            for (size_t c = 0; c < d; ++c) z += p.weights[c] * m.at(r, c);
            double prob = 1.0 / (1.0 + std::exp(-z));
            double err = prob - static_cast<double>(m.labels[r]);
            for (size_t c = 0; c < d; ++c) grad[c] += err * m.at(r, c);
            grad_b += err;
        }
        for (size_t c = 0; c < d; ++c) {
            grad[c] = grad[c] / n + hp.lr_l2 * p.weights[c];
            p.weights[c] -= hp.lr_rate * grad[c];
        }
        p.bias -= hp.lr_rate * grad_b / n;
    }
    return p;
}

double linear_score(const LinearParams& p, const FeatureMatrix& m, size_t r) {
    double s = p.bias;
    for (size_t c = 0; c < p.weights.size(); ++c) s += p.weights[c] * m.at(r, c);
    return s;
}

} // namespace

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::NaiveBayes: return "nb";
        case Algorithm::DecisionTree: return "dt";
        case Algorithm::LinearSvm: return "svm";
        case Algorithm::LogisticRegression: return "lr";
    }
    return "?";
}

Algorithm algorithm_from(const std::string& name) {
    if (name == "nb" || name == "naive_bayes") return Algorithm::NaiveBayes;
    if (name == "dt" || name == "decision_tree") return Algorithm::DecisionTree;
    if (name == "svm" || name == "linear_svm") return Algorithm::LinearSvm;
    if (name == "lr" || name == "logistic_regression") return Algorithm::LogisticRegression;
    throw ConfigError("unknown algorithm: " + name +
                      " (expected nb, dt, svm, or lr)");
}

Model train(Algorithm algorithm, const FeatureMatrix& train_data,
            const Hyperparams& hp, uint64_t seed) {
    check_trainable(train_data);
    Model model;
    model.algorithm = algorithm;
    model.columns = train_data.columns;
    model.seed = seed;
    model.hyper = hp;
    switch (algorithm) {
        case Algorithm::NaiveBayes:
            model.params = train_nb(train_data, hp);
            break;
        case Algorithm::DecisionTree:
            model.params = train_dt(train_data, hp);
            break;
        case Algorithm::LinearSvm:
            model.params = train_svm(train_data, hp, seed);
            break;
        case Algorithm::LogisticRegression:
            model.params = train_lr(train_data, hp);
            break;
    }
    return model;
}

std::vector<int> predict(const Model& model, const FeatureMatrix& m) {
    if (m.columns != model.columns) {
        std::string msg = "prediction input columns do not match the model;";
        size_t upto = std::min(m.columns.size(), model.columns.size());
        for (size_t c = 0; c < upto; ++c) {
            if (m.columns[c] != model.columns[c]) {
                msg += " first difference at column " + std::to_string(c) + ": \"" +
                       m.columns[c] + "\" vs \"" + model.columns[c] + "\"";
                break;
            }
        }
        if (m.columns.size() != model.columns.size())
            msg += " (got " + std::to_string(m.columns.size()) + " columns, model has " +
                   std::to_string(model.columns.size()) + ")";
        throw PipelineError(msg);
    }
    m.validate_finite();
    std::vector<int> out(m.rows);
    for (size_t r = 0; r < m.rows; ++r) {
        switch (model.algorithm) {
            case Algorithm::NaiveBayes:
                out[r] = predict_nb(std::get<NaiveBayesParams>(model.params), m, r);
                break;
            case Algorithm::DecisionTree:
                out[r] = predict_dt(std::get<TreeParams>(model.params), m, r);
                break;
            case Algorithm::LinearSvm:
                out[r] = linear_score(std::get<LinearParams>(model.params), m, r) >= 0
                             ? 1 : 0;
                break;
            case Algorithm::LogisticRegression: {
                // sigmoid(z) >= 0.5  <=>  z >= 0
                out[r] = linear_score(std::get<LinearParams>(model.params), m, r) >= 0
                             ? 1 : 0;
                break;
            }
        }
    }
    return out;
}

std::vector<int> predict_raw(const Model& model, const FeatureMatrix& raw) {
    FeatureMatrix selected = raw.select_columns(model.columns);
    return predict(model, apply_scaler(model.scaler, selected));
}

EvaluationMetrics evaluate(const std::vector<int>& predicted,
                           const std::vector<int>& truth) {
    if (predicted.size() != truth.size())
        throw PipelineError("evaluate: prediction and truth lengths differ");
    EvaluationMetrics e;
    for (size_t i = 0; i < truth.size(); ++i) {
        if (predicted[i] == 1 && truth[i] == 1) ++e.tp;
        else if (predicted[i] == 1 && truth[i] == 0) ++e.fp;
        else if (predicted[i] == 0 && truth[i] == 1) ++e.fn;
        else ++e.tn;
    }
    e.precision = e.tp + e.fp == 0
                      ? 0.0
                      : 100.0 * static_cast<double>(e.tp) /
                            static_cast<double>(e.tp + e.fp);
    e.recall = e.tp + e.fn == 0
                   ? 0.0
                   : 100.0 * static_cast<double>(e.tp) /
                         static_cast<double>(e.tp + e.fn);
    e.f1 = f1_from(e.precision, e.recall);
    return e;
}

double f1_from(double precision, double recall) {
    return precision + recall == 0 ? 0.0
                                   : 2.0 * precision * recall / (precision + recall);
}

// ---- serialization ---------------------------------------------------------

std::string Model::to_json() const {
    ordered_json j;
    j["algorithm"] = algorithm_name(algorithm);
    ordered_json pj;
    if (const auto* nb = std::get_if<NaiveBayesParams>(&params)) {
        pj["prior"] = {nb->prior[0], nb->prior[1]};
        pj["mean"] = {nb->mean[0], nb->mean[1]};
        pj["variance"] = {nb->variance[0], nb->variance[1]};
    } else if (const auto* dt = std::get_if<TreeParams>(&params)) {
        ordered_json nodes = ordered_json::array();
        for (const TreeNode& n : dt->nodes) {
            ordered_json nj;
            nj["feature"] = n.feature;
            nj["threshold"] = n.threshold;
            nj["left"] = n.left;
            nj["right"] = n.right;
            nj["leaf_class"] = n.leaf_class;
            nj["count"] = {n.count[0], n.count[1]};
            nodes.push_back(std::move(nj));
        }
        pj["nodes"] = std::move(nodes);
    } else if (const auto* lin = std::get_if<LinearParams>(&params)) {
        pj["weights"] = lin->weights;
        pj["bias"] = lin->bias;
    }
    j["parameters"] = std::move(pj);
    j["kept_columns"] = columns;
    ordered_json sj;
    sj["columns"] = scaler.columns;
    sj["mean"] = scaler.mean;
    sj["stddev"] = scaler.stddev;
    sj["constant"] = scaler.constant;
    j["scaler"] = std::move(sj);
    j["seed"] = seed;
    ordered_json hj;
    hj["dt_max_depth"] = hyper.dt_max_depth;
    hj["dt_min_samples_split"] = hyper.dt_min_samples_split;
    hj["svm_lambda"] = hyper.svm_lambda;
    hj["svm_epochs"] = hyper.svm_epochs;
    hj["lr_rate"] = hyper.lr_rate;
    hj["lr_epochs"] = hyper.lr_epochs;
    hj["lr_l2"] = hyper.lr_l2;
    hj["nb_variance_floor"] = hyper.nb_variance_floor;
    j["hyperparams"] = std::move(hj);
    return j.dump(2);
}

Model Model::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Model m;
    m.algorithm = algorithm_from(j.at("algorithm").get<std::string>());
    const nlohmann::json& pj = j.at("parameters");
    switch (m.algorithm) {
        case Algorithm::NaiveBayes: {
            NaiveBayesParams nb;
            nb.prior[0] = pj.at("prior")[0];
            nb.prior[1] = pj.at("prior")[1];
            nb.mean[0] = pj.at("mean")[0].get<std::vector<double>>();
            nb.mean[1] = pj.at("mean")[1].get<std::vector<double>>();
            nb.variance[0] = pj.at("variance")[0].get<std::vector<double>>();
            nb.variance[1] = pj.at("variance")[1].get<std::vector<double>>();
            m.params = std::move(nb);
            break;
        }
        case Algorithm::DecisionTree: {
            TreeParams dt;
            for (const nlohmann::json& nj : pj.at("nodes")) {
                TreeNode n;
                n.feature = nj.at("feature");
                n.threshold = nj.at("threshold");
                n.left = nj.at("left");
                n.right = nj.at("right");
                n.leaf_class = nj.at("leaf_class");
                n.count[0] = nj.at("count")[0];
                n.count[1] = nj.at("count")[1];
                dt.nodes.push_back(n);
            }
            m.params = std::move(dt);
            break;
        }
        case Algorithm::LinearSvm:
        case Algorithm::LogisticRegression: {
            LinearParams lin;
            lin.weights = pj.at("weights").get<std::vector<double>>();
            lin.bias = pj.at("bias");
            m.params = std::move(lin);
            break;
        }
    }
    m.columns = j.at("kept_columns").get<std::vector<std::string>>();
    const nlohmann::json& sj = j.at("scaler");
    m.scaler.columns = sj.at("columns").get<std::vector<std::string>>();
    m.scaler.mean = sj.at("mean").get<std::vector<double>>();
    m.scaler.stddev = sj.at("stddev").get<std::vector<double>>();
    m.scaler.constant = sj.at("constant").get<std::vector<uint8_t>>();
    m.seed = j.at("seed");
    const nlohmann::json& hj = j.at("hyperparams");
    m.hyper.dt_max_depth = hj.at("dt_max_depth");
    m.hyper.dt_min_samples_split = hj.at("dt_min_samples_split");
    m.hyper.svm_lambda = hj.at("svm_lambda");
    m.hyper.svm_epochs = hj.at("svm_epochs");
    m.hyper.lr_rate = hj.at("lr_rate");
    m.hyper.lr_epochs = hj.at("lr_epochs");
    m.hyper.lr_l2 = hj.at("lr_l2");
    m.hyper.nb_variance_floor = hj.at("nb_variance_floor");
    return m;
}

} // namespace stylepredict
