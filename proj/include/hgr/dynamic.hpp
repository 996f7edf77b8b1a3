#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hgr/classifier.hpp"
#include "hgr/landmark.hpp"
#include "hgr/static_model.hpp"
#include "hgr/trajectory.hpp"

namespace hgr {

struct DynamicConfig {
    std::size_t keyframes = 6;
    double deadzone = 0.15;         // fraction of the template's step length
    std::size_t update_interval = 3;  // camera frames per processed frame
    std::size_t max_age = 90;       // processed frames a candidate may live
    std::size_t cooldown = 0;       // processed frames muted after a prediction
    bool use_end_shape = false;
    bool filter_shapes = false;     // gate shape classification with the filter
    double z_weight = 1.0;
};

struct GestureTemplate {
    ClassIndex gesture = 0;
    ClassIndex start_shape = 0;
    QuantizedTrajectory trajectory;
    std::optional<ClassIndex> end_shape;
    double step_length = 0.0;
};

struct TrainingSequence {
    std::string sample_id;
    ClassIndex gesture = 0;
    std::vector<LandmarkFrame> frames;
};

/// One template per distinct (gesture, start shape, trajectory, end shape)
/// encoding. Throws DegenerateTrajectory naming the offending sample.
std::vector<GestureTemplate> fit_dynamic(std::span<const TrainingSequence> training, const StaticModel& shapes,
                                         const DynamicConfig& config);

struct Candidate {
    std::size_t template_index = 0;
    std::size_t progress = 0;  // next expected step
    Vec3 anchor{};             // position at the last matched step
    std::uint64_t created_frame = 0;
    std::size_t age = 0;       // processed frames since creation
};

struct CandidateState {
    std::vector<Candidate> candidates;
    std::size_t cooldown_left = 0;
};

/// One processed frame of the spotting state machine: spawn candidates for
/// templates whose start shape matches, advance or drop each candidate by
/// the direction from its anchor, and emit at most one completed gesture,
/// which clears every candidate. Motion that repeats the last matched step
/// re-anchors a candidate, and once a candidate has matched a step, motion
/// matching the step after the expected one advances it by two.
std::optional<ClassIndex> candidate_step(CandidateState& state, const LandmarkFrame& frame,
                                         std::span<const GestureTemplate> templates, const StaticModel& shapes,
                                         const DynamicConfig& config);

struct DynamicModel {
    StaticModel shapes;
    std::vector<std::string> gesture_labels;
    std::vector<GestureTemplate> templates;
    DynamicConfig config;
};

struct GestureEvent {
    std::uint64_t frame_id = 0;
    ClassIndex gesture = 0;
};

/// Feeds a camera stream into candidate_step every `update_interval` frames.
/// Owns one stream's state; use one instance per stream.
class OnlineRecognizer {
public:
    explicit OnlineRecognizer(const DynamicModel& model);
    OnlineRecognizer(const DynamicModel& model, DynamicConfig config);

    std::optional<GestureEvent> push(const LandmarkFrame& frame);

    const CandidateState& state() const noexcept { return state_; }
    const DynamicConfig& config() const noexcept { return config_; }
    void reset();

private:
    const DynamicModel* model_;
    DynamicConfig config_;
    CandidateState state_;
    std::uint64_t seen_ = 0;
};

}  // namespace hgr
