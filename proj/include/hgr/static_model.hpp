#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hgr/augmentation.hpp"
#include "hgr/classifier.hpp"
#include "hgr/filter.hpp"
#include "hgr/landmark.hpp"

namespace hgr {

/// A trained static-gesture recognizer: vectorization settings, optional
/// false-positive filter and a fitted classifier.
struct StaticModel {
    std::vector<std::string> labels;
    std::size_t num_hands = 1;
    bool normalize = true;
    AugmentationSetting setting = builtin_setting(1);
    std::optional<RepresentativeSet> filter;
    std::unique_ptr<StaticClassifier> classifier;

    StaticModel() = default;
    StaticModel(StaticModel&&) noexcept = default;
    StaticModel& operator=(StaticModel&&) noexcept = default;
    StaticModel(const StaticModel& other);
    StaticModel& operator=(const StaticModel& other);

    /// Classifier input for a frame: vectorized, handedness stripped.
    std::vector<double> features(const LandmarkFrame& frame) const;

    /// nullopt when the filter rejects the frame. `use_filter` = false skips it.
    std::optional<ClassIndex> classify(const LandmarkFrame& frame, bool use_filter = true) const;

    std::optional<std::size_t> label_index(const std::string& label) const;
};

struct FilterConfig {
    Fusion fusion = Fusion::Mean;
    Similarity similarity = Similarity::Cosine;
    double mu = 0.93;
};

/// Fits classifier (and filter, if configured) on labelled feature vectors.
StaticModel train_static_model(const std::vector<std::vector<double>>& vectors, const std::vector<ClassIndex>& labels,
                               std::vector<std::string> label_names, const ClassifierConfig& classifier,
                               const std::optional<FilterConfig>& filter, std::size_t num_hands, bool normalize,
                               AugmentationSetting setting);

}  // namespace hgr
