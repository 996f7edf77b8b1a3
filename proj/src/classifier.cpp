#include "hgr/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>

#include "hgr/error.hpp"

namespace hgr {

namespace {

void check_training(std::span<const std::vector<double>> vectors, std::span<const ClassIndex> labels) {
    if (vectors.size() != labels.size())
        throw std::invalid_argument("vectors and labels differ in length");
    if (vectors.empty()) throw std::invalid_argument("empty training set");
    const std::size_t dim = vectors.front().size();
    for (const auto& v : vectors)
        if (v.size() != dim) throw DimensionMismatch(dim, v.size());
}

std::size_t count_classes(std::span<const ClassIndex> labels) {
    return *std::max_element(labels.begin(), labels.end()) + 1;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double t = a[i] - b[i];
        d += t * t;
    }
    return d;
}

ClassIndex argmax_lowest(const std::vector<double>& scores) {
    ClassIndex best = 0;
    for (ClassIndex c = 1; c < scores.size(); ++c)
        if (scores[c] > scores[best]) best = c;
    return best;
}

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

// --- KNN -------------------------------------------------------------------

KnnClassifier::KnnClassifier(std::size_t k) : k_(k) {
    if (k == 0) throw std::invalid_argument("k must be positive");
}

void KnnClassifier::fit(std::span<const std::vector<double>> vectors, std::span<const ClassIndex> labels) {
    check_training(vectors, labels);
    if (k_ > vectors.size())
        throw Error("k=" + std::to_string(k_) + " exceeds the " + std::to_string(vectors.size()) +
                    " training vectors");
    train_.assign(vectors.begin(), vectors.end());
    labels_.assign(labels.begin(), labels.end());
    num_classes_ = count_classes(labels);
}

std::vector<std::size_t> KnnClassifier::neighbours(std::span<const double> v) const {
    if (!fitted()) throw NotFitted();
    // Max-heap on (distance, index) holding the k best seen so far.
    std::priority_queue<std::pair<double, std::size_t>> heap;
    for (std::size_t i = 0; i < train_.size(); ++i) {
        const std::pair<double, std::size_t> entry{squared_distance(v, train_[i]), i};
        if (heap.size() < k_) {
            heap.push(entry);
        } else if (entry < heap.top()) {
            heap.pop();
            heap.push(entry);
        }
    }
    std::vector<std::size_t> out(heap.size());
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = heap.top().second;
        heap.pop();
    }
    return out;
}

std::vector<double> KnnClassifier::predict_scores(std::span<const double> v) const {
    std::vector<double> votes(num_classes_, 0.0);
    const auto nn = neighbours(v);
    for (std::size_t i : nn) votes[labels_[i]] += 1.0;
    for (auto& x : votes) x /= static_cast<double>(nn.size());
    return votes;
}

ClassIndex KnnClassifier::predict(std::span<const double> v) const { return argmax_lowest(predict_scores(v)); }

// --- nearest centroid --------------------------------------------------------

void CentroidClassifier::fit(std::span<const std::vector<double>> vectors, std::span<const ClassIndex> labels) {
    check_training(vectors, labels);
    const std::size_t classes = count_classes(labels);
    const std::size_t dim = vectors.front().size();
    std::vector<std::vector<double>> sums(classes, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(classes, 0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t d = 0; d < dim; ++d) sums[labels[i]][d] += vectors[i][d];
        ++counts[labels[i]];
    }
    for (std::size_t c = 0; c < classes; ++c) {
        if (counts[c] == 0) throw EmptyClass(c);
        for (auto& x : sums[c]) x /= static_cast<double>(counts[c]);
    }
    prototypes_ = std::move(sums);
}

std::vector<double> CentroidClassifier::predict_scores(std::span<const double> v) const {
    if (!fitted()) throw NotFitted();
    std::vector<double> scores;
    scores.reserve(prototypes_.size());
    for (const auto& p : prototypes_) scores.push_back(-std::sqrt(squared_distance(v, p)));
    return scores;
}

ClassIndex CentroidClassifier::predict(std::span<const double> v) const { return argmax_lowest(predict_scores(v)); }

// --- logistic regression -----------------------------------------------------

double LogisticObjective::loss(std::span<const double> params) const {
    std::vector<double> scratch(params.size());
    return loss_and_gradient(params, scratch);
}

double LogisticObjective::loss_and_gradient(std::span<const double> params, std::span<double> grad) const {
    const std::size_t dim = dimension();
    const std::size_t stride = dim + 1;
    if (params.size() != num_params() || grad.size() != num_params())
        throw DimensionMismatch(num_params(), params.size());
    std::fill(grad.begin(), grad.end(), 0.0);

    const double inv_n = 1.0 / static_cast<double>(vectors.size());
    double total = 0.0;
    for (std::size_t c = 0; c < num_classes; ++c) {
        const auto w = params.subspan(c * stride, stride);
        auto g = grad.subspan(c * stride, stride);
        double data_loss = 0.0;
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            const auto& x = vectors[i];
            double z = w[dim];
            for (std::size_t d = 0; d < dim; ++d) z += w[d] * x[d];
            const double y = labels[i] == c ? 1.0 : 0.0;
            data_loss += softplus(z) - y * z;
            const double r = sigmoid(z) - y;
            for (std::size_t d = 0; d < dim; ++d) g[d] += r * x[d];
            g[dim] += r;
        }
        double reg = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            g[d] = g[d] * inv_n + l2 * w[d];
            reg += w[d] * w[d];
        }
        g[dim] *= inv_n;
        total += data_loss * inv_n + 0.5 * l2 * reg;
    }
    return total;
}

LogisticRegression::LogisticRegression(LogisticParams params) : params_(params) {}

void LogisticRegression::fit(std::span<const std::vector<double>> vectors, std::span<const ClassIndex> labels) {
    check_training(vectors, labels);
    const std::size_t classes = count_classes(labels);
    if (classes < 2) throw std::invalid_argument("logistic regression needs at least two classes");

    LogisticObjective objective{vectors, labels, classes, params_.l2};
    std::vector<double> theta(objective.num_params(), 0.0);
    std::vector<double> grad(theta.size());
    for (std::size_t epoch = 0; epoch < params_.epochs; ++epoch) {
        const double loss = objective.loss_and_gradient(theta, grad);
        if (!std::isfinite(loss)) throw NonFiniteLoss(epoch);
        for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= params_.learning_rate * grad[i];
    }
    if (!std::all_of(theta.begin(), theta.end(), [](double t) { return std::isfinite(t); }))
        throw NonFiniteLoss(params_.epochs);

    const std::size_t stride = objective.dimension() + 1;
    weights_.assign(classes, {});
    for (std::size_t c = 0; c < classes; ++c)
        weights_[c].assign(theta.begin() + static_cast<std::ptrdiff_t>(c * stride),
                           theta.begin() + static_cast<std::ptrdiff_t>((c + 1) * stride));
    fitted_ = true;
}

void LogisticRegression::set_weights(std::vector<std::vector<double>> weights) {
    if (weights.size() < 2) throw std::invalid_argument("logistic regression needs at least two classes");
    weights_ = std::move(weights);
    fitted_ = true;
}

std::vector<double> LogisticRegression::predict_scores(std::span<const double> v) const {
    if (!fitted_) throw NotFitted();
    std::vector<double> scores;
    scores.reserve(weights_.size());
    for (const auto& w : weights_) {
        if (w.size() != v.size() + 1) throw DimensionMismatch(w.size() - 1, v.size());
        double z = w.back();
        for (std::size_t d = 0; d < v.size(); ++d) z += w[d] * v[d];
        scores.push_back(sigmoid(z));
    }
    return scores;
}

ClassIndex LogisticRegression::predict(std::span<const double> v) const { return argmax_lowest(predict_scores(v)); }

// --- factory / gate ----------------------------------------------------------

std::unique_ptr<StaticClassifier> make_classifier(const ClassifierConfig& config) {
    switch (config.kind) {
        case ClassifierKind::Knn: return std::make_unique<KnnClassifier>(config.k);
        case ClassifierKind::Centroid: return std::make_unique<CentroidClassifier>();
        case ClassifierKind::LogReg: return std::make_unique<LogisticRegression>(config.logistic);
    }
    throw std::invalid_argument("unknown classifier kind");
}

std::optional<ClassifierKind> parse_classifier_kind(const std::string& name) {
    if (name == "knn") return ClassifierKind::Knn;
    if (name == "centroid") return ClassifierKind::Centroid;
    if (name == "logreg") return ClassifierKind::LogReg;
    return std::nullopt;
}

std::optional<ClassIndex> classify(std::span<const double> v, const RepresentativeSet* filt,
                                   const StaticClassifier& clf) {
    if (!clf.fitted()) throw NotFitted();
    if (filt && !passes_filter(v, *filt)) return std::nullopt;
    return clf.predict(v);
}

}  // namespace hgr
