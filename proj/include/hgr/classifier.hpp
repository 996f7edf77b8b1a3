#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgr/filter.hpp"

namespace hgr {

using ClassIndex = std::size_t;

/// Any static-shape classifier. Class indices are dense in [0, C); fit must
/// precede predict, and fitted classifiers are read-only.
class StaticClassifier {
public:
    virtual ~StaticClassifier() = default;

    virtual void fit(std::span<const std::vector<double>> vectors, std::span<const ClassIndex> labels) = 0;
    virtual ClassIndex predict(std::span<const double> v) const = 0;
    /// One score per class; larger is more likely.
    virtual std::vector<double> predict_scores(std::span<const double> v) const = 0;
    virtual bool fitted() const = 0;
    virtual std::string kind() const = 0;
    virtual std::unique_ptr<StaticClassifier> clone() const = 0;
};

/// Majority vote among the k nearest training vectors (Euclidean). Vote ties
/// go to the lowest class index; distance ties to the earlier training vector.
class KnnClassifier final : public StaticClassifier {
public:
    explicit KnnClassifier(std::size_t k = 5);

    void fit(std::span<const std::vector<double>> vectors, std::span<const ClassIndex> labels) override;
    ClassIndex predict(std::span<const double> v) const override;
    std::vector<double> predict_scores(std::span<const double> v) const override;
    bool fitted() const override { return !labels_.empty(); }
    std::string kind() const override { return "knn"; }
    std::unique_ptr<StaticClassifier> clone() const override { return std::make_unique<KnnClassifier>(*this); }

    std::size_t k() const noexcept { return k_; }
    /// Indices of the k nearest training vectors, nearest first.
    std::vector<std::size_t> neighbours(std::span<const double> v) const;

    const std::vector<std::vector<double>>& training_vectors() const noexcept { return train_; }
    const std::vector<ClassIndex>& training_labels() const noexcept { return labels_; }
    std::size_t num_classes() const noexcept { return num_classes_; }

private:
    std::size_t k_;
    std::size_t num_classes_ = 0;
    std::vector<std::vector<double>> train_;
    std::vector<ClassIndex> labels_;
};

/// Nearest class mean; ties to the lowest class index.
class CentroidClassifier final : public StaticClassifier {
public:
    void fit(std::span<const std::vector<double>> vectors, std::span<const ClassIndex> labels) override;
    ClassIndex predict(std::span<const double> v) const override;
    std::vector<double> predict_scores(std::span<const double> v) const override;
    bool fitted() const override { return !prototypes_.empty(); }
    std::string kind() const override { return "centroid"; }
    std::unique_ptr<StaticClassifier> clone() const override { return std::make_unique<CentroidClassifier>(*this); }

    const std::vector<std::vector<double>>& prototypes() const noexcept { return prototypes_; }
    void set_prototypes(std::vector<std::vector<double>> prototypes) { prototypes_ = std::move(prototypes); }

private:
    std::vector<std::vector<double>> prototypes_;
};

/// Regularized one-vs-rest logistic loss over a flat parameter vector laid
/// out class-major as [w_c (dim values), b_c]. The L2 term skips biases.
struct LogisticObjective {
    std::span<const std::vector<double>> vectors;
    std::span<const ClassIndex> labels;
    std::size_t num_classes = 0;
    double l2 = 0.0;

    std::size_t dimension() const { return vectors.empty() ? 0 : vectors.front().size(); }
    std::size_t num_params() const { return num_classes * (dimension() + 1); }

    double loss(std::span<const double> params) const;
    /// Returns the loss and writes the analytic gradient into `grad`.
    double loss_and_gradient(std::span<const double> params, std::span<double> grad) const;
};

struct LogisticParams {
    std::size_t epochs = 500;
    double learning_rate = 0.5;
    double l2 = 1e-3;
};

/// One-vs-rest logistic regression trained by full-batch gradient descent
/// from all-zero weights. Scores are per-class sigmoid outputs.
class LogisticRegression final : public StaticClassifier {
public:
    explicit LogisticRegression(LogisticParams params = {});

    void fit(std::span<const std::vector<double>> vectors, std::span<const ClassIndex> labels) override;
    ClassIndex predict(std::span<const double> v) const override;
    std::vector<double> predict_scores(std::span<const double> v) const override;
    bool fitted() const override { return fitted_; }
    std::string kind() const override { return "logreg"; }
    std::unique_ptr<StaticClassifier> clone() const override { return std::make_unique<LogisticRegression>(*this); }

    const LogisticParams& params() const noexcept { return params_; }
    /// Weight rows, one per class, bias last.
    const std::vector<std::vector<double>>& weights() const noexcept { return weights_; }
    /// Installs weights directly, e.g. from a saved model.
    void set_weights(std::vector<std::vector<double>> weights);

private:
    LogisticParams params_;
    std::vector<std::vector<double>> weights_;
    bool fitted_ = false;
};

enum class ClassifierKind { Knn, Centroid, LogReg };

struct ClassifierConfig {
    ClassifierKind kind = ClassifierKind::Knn;
    std::size_t k = 5;
    LogisticParams logistic;
};

std::unique_ptr<StaticClassifier> make_classifier(const ClassifierConfig& config);
std::optional<ClassifierKind> parse_classifier_kind(const std::string& name);

/// Filter gate followed by the classifier. nullopt means the vector was
/// rejected by the filter.
std::optional<ClassIndex> classify(std::span<const double> v, const RepresentativeSet* filt,
                                   const StaticClassifier& clf);

}  // namespace hgr
