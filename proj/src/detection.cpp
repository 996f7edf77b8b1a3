#include "hgr/detection.hpp"

#include <future>
#include <stdexcept>

#include "hgr/error.hpp"

namespace hgr {

bool ReplayStore::insert(ReplayKey key, LandmarkFrame frame) {
    auto [it, inserted] = records_.insert_or_assign(std::move(key), std::move(frame));
    return !inserted;
}

const LandmarkFrame* ReplayStore::find(const ReplayKey& key) const {
    auto it = records_.find(key);
    return it == records_.end() ? nullptr : &it->second;
}

LandmarkFrame ReplayStore::lookup(const ReplayKey& key) const {
    const LandmarkFrame* f = find(key);
    return f ? *f : LandmarkFrame{};
}

std::vector<std::string> ReplayStore::sample_ids() const {
    std::vector<std::string> ids;
    for (const auto& [key, frame] : records_)
        if (ids.empty() || ids.back() != key.sample_id) ids.push_back(key.sample_id);
    return ids;
}

LandmarkFrame ReplayDetector::detect(const Image&, const std::optional<ReplayKey>& context) const {
    if (!context) throw MissingContext();
    return store_->lookup(*context);
}

ReplayDetector replay_detector(const ReplayStore& store) { return ReplayDetector(store); }

LandmarkFrame MockDetector::detect(const Image& img, const std::optional<ReplayKey>& context) const {
    const int rotation = context ? context->delta_r : 0;
    const double v = mean_value(img);
    const bool ok = v >= spec_.min_brightness && v <= spec_.max_brightness &&
                    spec_.accept_rotation.contains(rotation);
    return ok ? spec_.emitted_frame : LandmarkFrame{};
}

namespace {

LandmarkFrame run_stage(const Image& img, const AugmentationStage& stage, const Detector& detector,
                        std::string_view sample_id) {
    ReplayKey key(std::string(sample_id), stage);
    if (!detector.needs_pixels()) return detector.detect(img, key);
    return detector.detect(apply_stage(img, stage), key);
}

}  // namespace

std::optional<Detection> try_detect_with_augmentations(const Image& img, const AugmentationSetting& setting,
                                                       const Detector& detector, std::string_view sample_id,
                                                       StageExecution execution) {
    if (setting.stages.empty()) throw std::invalid_argument("augmentation setting has no stages");

    if (execution == StageExecution::Sequential) {
        for (std::size_t i = 0; i < setting.stages.size(); ++i) {
            LandmarkFrame f = run_stage(img, setting.stages[i], detector, sample_id);
            if (!f.empty()) return Detection{std::move(f), i};
        }
        return std::nullopt;
    }

    std::vector<std::future<LandmarkFrame>> pending;
    pending.reserve(setting.stages.size());
    for (const auto& stage : setting.stages)
        pending.push_back(std::async(std::launch::async, [&img, stage, &detector, sample_id] {
            return run_stage(img, stage, detector, sample_id);
        }));

    // Reduce by stage index, not completion order.
    std::optional<Detection> best;
    for (std::size_t i = 0; i < pending.size(); ++i) {
        LandmarkFrame f = pending[i].get();
        if (!best && !f.empty()) best = Detection{std::move(f), i};
    }
    return best;
}

Detection detect_with_augmentations(const Image& img, const AugmentationSetting& setting, const Detector& detector,
                                    std::string_view sample_id, StageExecution execution) {
    auto found = try_detect_with_augmentations(img, setting, detector, sample_id, execution);
    if (!found) throw NoHandDetected();
    return std::move(*found);
}

void record_stages(ReplayStore& store, const Image& img, const AugmentationSetting& setting,
                   const Detector& detector, const std::string& sample_id) {
    for (const auto& stage : setting.stages)
        store.insert(ReplayKey(sample_id, stage), run_stage(img, stage, detector, sample_id));
}

}  // namespace hgr
