#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "stylepredict/matrix.hpp"
#include "stylepredict/preprocess.hpp"

namespace stylepredict {

enum class Algorithm { NaiveBayes, DecisionTree, LinearSvm, LogisticRegression };

const char* algorithm_name(Algorithm a);          // nb / dt / svm / lr
Algorithm algorithm_from(const std::string& name);

struct Hyperparams {
    int dt_max_depth = 10;
    int dt_min_samples_split = 2;
    double svm_lambda = 1e-3;
    int svm_epochs = 200;
    double lr_rate = 0.1;
    int lr_epochs = 500;
    double lr_l2 = 1e-4;
    double nb_variance_floor = 1e-9;
};

struct NaiveBayesParams {
    double prior[2] = {0, 0}; // clean, buggy
    std::vector<double> mean[2];
    std::vector<double> variance[2]; // floored
};

struct TreeNode {
    int feature = -1;      // -1 marks a leaf
    double threshold = 0;  // goes left when x <= threshold
    int left = -1, right = -1;
    int leaf_class = -1;
    long count[2] = {0, 0};
};

struct TreeParams {
    std::vector<TreeNode> nodes; // nodes[0] is the root
};

struct LinearParams {
    std::vector<double> weights;
    double bias = 0;
};

struct Model {
    Algorithm algorithm = Algorithm::NaiveBayes;
    std::variant<NaiveBayesParams, TreeParams, LinearParams> params;

    // training meta, enough to reproduce predictions on raw data
    std::vector<std::string> columns;
    Scaler scaler;
    uint64_t seed = 0;
    Hyperparams hyper;

    std::string to_json() const;
    static Model from_json(const std::string& text);
};

// Trains on preprocessed (filtered + scaled + resampled) data. The
// caller fills in Model::columns and Model::scaler afterwards when the
// model is meant to be applied to raw feature rows.
Model train(Algorithm algorithm, const FeatureMatrix& train, const Hyperparams& hp,
            uint64_t seed);

// Deterministic labels; ties always go to the positive (buggy) class.
std::vector<int> predict(const Model& model, const FeatureMatrix& m);

// Applies the stored column selection and scaler first.
std::vector<int> predict_raw(const Model& model, const FeatureMatrix& raw);

struct EvaluationMetrics {
    long tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0, recall = 0, f1 = 0; // percent
};

EvaluationMetrics evaluate(const std::vector<int>& predicted,
                           const std::vector<int>& truth);

// F1 from percent precision/recall, as used in the report tables.
double f1_from(double precision, double recall);

} // namespace stylepredict
