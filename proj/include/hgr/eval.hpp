#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hgr/augmentation.hpp"
#include "hgr/classifier.hpp"
#include "hgr/detection.hpp"
#include "hgr/static_model.hpp"

namespace hgr {

/// r = M / N, c = correct / M (0 when M = 0), m = c * r.
struct Metric {
    std::size_t total = 0;     // N
    std::size_t detected = 0;  // M
    std::size_t correct = 0;
    double r = 0.0;
    double c = 0.0;
    double m = 0.0;
};

/// Throws InvalidCounts unless 0 <= correct <= detected <= total and total > 0.
Metric compute_metric(std::size_t total, std::size_t detected, std::size_t correct);

/// Replay store plus per-sample class labels.
struct LabeledDataset {
    ReplayStore store;
    std::vector<std::string> sample_ids;
    std::vector<ClassIndex> labels;
    std::vector<std::string> class_names;  // sorted
};

/// Reads `labels.csv` (header `sample_id,class_label`). Throws FormatError.
std::vector<std::pair<std::string, std::string>> load_labels(const std::filesystem::path& path);

/// Builds a dataset from (sample_id, class_label) rows and a store.
LabeledDataset make_dataset(ReplayStore store, const std::vector<std::pair<std::string, std::string>>& rows);

/// `dir/labels.csv` plus every `dir/*.jsonl` replay file.
LabeledDataset load_dataset_dir(const std::filesystem::path& dir, std::vector<std::string>* warnings = nullptr);

/// First-success features per sample under a setting; nullopt = not detected.
std::vector<std::optional<std::vector<double>>> detect_dataset(const LabeledDataset& data,
                                                               const AugmentationSetting& setting,
                                                               std::size_t num_hands, bool normalize);

struct NShotPlan {
    std::size_t n = 1;
    std::size_t repetitions = 10;
    std::uint64_t seed = 0;
};

struct EvalConfig {
    AugmentationSetting setting = builtin_setting(1);
    ClassifierConfig classifier;
    std::optional<FilterConfig> filter;
    std::size_t num_hands = 1;
    bool normalize = true;
    bool parallel = false;
};

struct RepetitionResult {
    double r = 0.0;
    double c = 0.0;
    double m = 0.0;
    std::size_t evaluated = 0;  // detected samples outside the training draw
    std::size_t correct = 0;
};

struct EvalReport {
    NShotPlan plan;
    std::size_t total = 0;     // N, whole dataset
    std::size_t detected = 0;  // M, whole dataset
    double r = 0.0;
    double c = 0.0;  // mean over repetitions
    double m = 0.0;  // c * r
    std::vector<std::string> class_names;
    /// confusion[true][pred]; the extra last column counts filter rejections.
    std::vector<std::vector<std::size_t>> confusion;
    std::vector<RepetitionResult> repetitions;
    double mean_m = 0.0;
    double std_m = 0.0;  // population standard deviation
};

/// n-shot protocol: per repetition draw n detected samples per class with a
/// seeded generator, train on them, score the remaining detected samples.
/// r covers the whole dataset. Throws InsufficientSamples naming the class.
EvalReport run_nshot(const LabeledDataset& data, const NShotPlan& plan, const EvalConfig& config);

nlohmann::json to_json(const EvalReport& report);

}  // namespace hgr
