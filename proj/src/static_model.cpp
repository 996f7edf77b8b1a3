#include "hgr/static_model.hpp"

#include "hgr/error.hpp"

namespace hgr {

StaticModel::StaticModel(const StaticModel& other)
    : labels(other.labels),
      num_hands(other.num_hands),
      normalize(other.normalize),
      setting(other.setting),
      filter(other.filter),
      classifier(other.classifier ? other.classifier->clone() : nullptr) {}

StaticModel& StaticModel::operator=(const StaticModel& other) {
    if (this != &other) *this = StaticModel(other);
    return *this;
}

std::vector<double> StaticModel::features(const LandmarkFrame& frame) const {
    return strip_handedness(vectorize(frame, num_hands, normalize));
}

std::optional<ClassIndex> StaticModel::classify(const LandmarkFrame& frame, bool use_filter) const {
    if (!classifier) throw NotFitted();
    const auto v = features(frame);
    return hgr::classify(v, use_filter && filter ? &*filter : nullptr, *classifier);
}

std::optional<std::size_t> StaticModel::label_index(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    return std::nullopt;
}

StaticModel train_static_model(const std::vector<std::vector<double>>& vectors, const std::vector<ClassIndex>& labels,
                               std::vector<std::string> label_names, const ClassifierConfig& classifier,
                               const std::optional<FilterConfig>& filter, std::size_t num_hands, bool normalize,
                               AugmentationSetting setting) {
    StaticModel model;
    model.labels = std::move(label_names);
    model.num_hands = num_hands;
    model.normalize = normalize;
    model.setting = std::move(setting);
    model.classifier = make_classifier(classifier);
    model.classifier->fit(vectors, labels);

    if (filter) {
        std::vector<std::vector<std::vector<double>>> per_class(model.labels.size());
        for (std::size_t i = 0; i < vectors.size(); ++i) per_class.at(labels[i]).push_back(vectors[i]);
        model.filter = build_filter(per_class, filter->fusion, filter->similarity, filter->mu);
    }
    return model;
}

}  // namespace hgr
