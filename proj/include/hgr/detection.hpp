#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hgr/augmentation.hpp"
#include "hgr/image.hpp"
#include "hgr/landmark.hpp"

namespace hgr {

/// Identifies one detector invocation: which sample, under which stage.
struct ReplayKey {
    std::string sample_id;
    int delta_b = 0;
    int delta_r = 0;

    ReplayKey() = default;
    ReplayKey(std::string id, const AugmentationStage& stage)
        : sample_id(std::move(id)), delta_b(stage.delta_b), delta_r(stage.delta_r) {}
    ReplayKey(std::string id, int db, int dr) : sample_id(std::move(id)), delta_b(db), delta_r(dr) {}

    auto operator<=>(const ReplayKey&) const = default;
};

/// Landmark detector contract. Implementations must be deterministic and
/// safe to call concurrently.
class Detector {
public:
    virtual ~Detector() = default;

    virtual LandmarkFrame detect(const Image& img, const std::optional<ReplayKey>& context) const = 0;

    /// False when detect() never reads pixels; the pipeline then skips
    /// rendering the augmented images.
    virtual bool needs_pixels() const { return true; }
};

/// Pre-extracted detections keyed by (sample, stage). Absent keys read as
/// "no hand".
class ReplayStore {
public:
    /// Returns true if the key was already present (the new record wins).
    bool insert(ReplayKey key, LandmarkFrame frame);

    const LandmarkFrame* find(const ReplayKey& key) const;
    LandmarkFrame lookup(const ReplayKey& key) const;

    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

    /// Records in key order.
    const std::map<ReplayKey, LandmarkFrame>& records() const noexcept { return records_; }

    /// Distinct sample ids in sorted order.
    std::vector<std::string> sample_ids() const;

private:
    std::map<ReplayKey, LandmarkFrame> records_;
};

class ReplayDetector final : public Detector {
public:
    explicit ReplayDetector(const ReplayStore& store) : store_(&store) {}

    /// Ignores pixels. Throws MissingContext without a key.
    LandmarkFrame detect(const Image& img, const std::optional<ReplayKey>& context) const override;
    bool needs_pixels() const override { return false; }

private:
    const ReplayStore* store_;
};

ReplayDetector replay_detector(const ReplayStore& store);

/// Test double whose outcome depends only on the presented image's mean V
/// and the stage rotation.
struct MockDetectorSpec {
    int min_brightness = 0;    // inclusive
    int max_brightness = 255;  // inclusive
    std::set<int> accept_rotation{0};
    LandmarkFrame emitted_frame;
};

class MockDetector final : public Detector {
public:
    explicit MockDetector(MockDetectorSpec spec) : spec_(std::move(spec)) {}

    LandmarkFrame detect(const Image& img, const std::optional<ReplayKey>& context) const override;

    const MockDetectorSpec& spec() const noexcept { return spec_; }

private:
    MockDetectorSpec spec_;
};

struct Detection {
    LandmarkFrame frame;
    std::size_t stage_index = 0;
};

enum class StageExecution { Sequential, Parallel };

/// Runs the detector on each stage and returns the lowest-indexed stage that
/// found a hand. Parallel execution evaluates every stage concurrently but
/// reduces to the same result. Throws NoHandDetected when every stage is empty.
Detection detect_with_augmentations(const Image& img, const AugmentationSetting& setting, const Detector& detector,
                                    std::string_view sample_id = {},
                                    StageExecution execution = StageExecution::Sequential);

/// Same selection without the exception: nullopt when nothing was found.
std::optional<Detection> try_detect_with_augmentations(const Image& img, const AugmentationSetting& setting,
                                                       const Detector& detector, std::string_view sample_id = {},
                                                       StageExecution execution = StageExecution::Sequential);

/// Runs every stage on an image and records each outcome, empty ones
/// included, under (sample_id, stage).
void record_stages(ReplayStore& store, const Image& img, const AugmentationSetting& setting,
                   const Detector& detector, const std::string& sample_id);

}  // namespace hgr
