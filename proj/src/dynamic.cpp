#include "hgr/dynamic.hpp"

#include <algorithm>
#include <stdexcept>

#include "hgr/error.hpp"

namespace hgr {

namespace {

bool same_encoding(const GestureTemplate& a, const GestureTemplate& b) {
    return a.gesture == b.gesture && a.start_shape == b.start_shape && a.end_shape == b.end_shape &&
           a.trajectory == b.trajectory;
}

ClassIndex shape_of(const StaticModel& shapes, const LandmarkFrame& frame, bool use_filter,
                    const std::string& sample_id) {
    auto cls = shapes.classify(frame, use_filter);
    if (!cls) throw Error("sample '" + sample_id + "': hand shape rejected by the false-positive filter");
    return *cls;
}

}  // namespace

std::vector<GestureTemplate> fit_dynamic(std::span<const TrainingSequence> training, const StaticModel& shapes,
                                         const DynamicConfig& config) {
    std::vector<GestureTemplate> out;
    std::vector<std::size_t> merged;  // samples folded into each template
    for (const auto& seq : training) {
        const auto points = trajectory_from_frames(seq.frames);
        EncodedTrajectory enc;
        try {
            enc = encode_trajectory(points, config.keyframes, config.deadzone, config.z_weight);
        } catch (const DegenerateTrajectory&) {
            throw DegenerateTrajectory(seq.sample_id);
        }

        const auto first = std::find_if(seq.frames.begin(), seq.frames.end(), [](auto& f) { return !f.empty(); });
        const auto last = std::find_if(seq.frames.rbegin(), seq.frames.rend(), [](auto& f) { return !f.empty(); });

        GestureTemplate t;
        t.gesture = seq.gesture;
        t.trajectory = std::move(enc.trajectory);
        t.step_length = enc.step_length;
        t.start_shape = shape_of(shapes, *first, config.filter_shapes, seq.sample_id);
        t.end_shape = shape_of(shapes, *last, config.filter_shapes, seq.sample_id);

        auto dup = std::find_if(out.begin(), out.end(), [&](const GestureTemplate& o) { return same_encoding(o, t); });
        if (dup == out.end()) {
            out.push_back(std::move(t));
            merged.push_back(1);
        } else {
            // Running mean of the calibration length over identical encodings.
            const std::size_t i = static_cast<std::size_t>(dup - out.begin());
            ++merged[i];
            dup->step_length += (t.step_length - dup->step_length) / static_cast<double>(merged[i]);
        }
    }
    return out;
}

namespace {

// Moves past template steps that carry no movement.
void skip_stationary(Candidate& c, const GestureTemplate& t) {
    while (c.progress < t.trajectory.steps.size() && t.trajectory.steps[c.progress].stationary()) ++c.progress;
}

}  // namespace

std::optional<ClassIndex> candidate_step(CandidateState& state, const LandmarkFrame& frame,
                                         std::span<const GestureTemplate> templates, const StaticModel& shapes,
                                         const DynamicConfig& config) {
    if (state.cooldown_left > 0) {
        --state.cooldown_left;
        state.candidates.clear();
        return std::nullopt;
    }

    auto& cands = state.candidates;
    for (auto& c : cands) ++c.age;
    std::erase_if(cands, [&](const Candidate& c) { return c.age > config.max_age; });
    if (frame.empty()) return std::nullopt;

    const Vec3 pos = trajectory_position(frame);
    const std::optional<ClassIndex> shape = shapes.classify(frame, config.filter_shapes);

    if (shape) {
        for (std::size_t t = 0; t < templates.size(); ++t) {
            if (templates[t].start_shape != *shape) continue;
            Candidate c{t, 0, pos, frame.frame_id, 0};
            skip_stationary(c, templates[t]);
            cands.push_back(c);
        }
    }

    std::optional<std::size_t> done;  // index into cands of the winning completion
    std::size_t write = 0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        Candidate c = cands[i];
        const GestureTemplate& t = templates[c.template_index];
        const auto& steps = t.trajectory.steps;

        if (c.progress < steps.size()) {
            const Direction observed = quantize_step(c.anchor, pos, config.deadzone, t.step_length, config.z_weight);
            const Direction& expected = steps[c.progress];
            if (observed == expected) {
                ++c.progress;
                c.anchor = pos;
                skip_stationary(c, t);
            } else if (c.progress > 0 && !observed.stationary() && observed == steps[c.progress - 1]) {
                c.anchor = pos;  // still moving along the last matched step
            } else if (c.progress > 0 && c.progress + 1 < steps.size() && observed == steps[c.progress + 1]) {
                // A short transitional step between keyframes was passed
                // between two processed frames.
                c.progress += 2;
                c.anchor = pos;
                skip_stationary(c, t);
            } else if (!observed.compatible_with(expected)) {
                continue;  // wrong direction: drop
            }
        }

        if (c.progress == steps.size()) {
            const bool end_ok = !config.use_end_shape || !t.end_shape || (shape && *shape == *t.end_shape);
            if (end_ok) {
                // Prefer the longest trajectory, then the oldest candidate.
                const auto better = [&](const Candidate& a, const Candidate& b) {
                    const auto la = templates[a.template_index].trajectory.steps.size();
                    const auto lb = templates[b.template_index].trajectory.steps.size();
                    if (la != lb) return la > lb;
                    if (a.created_frame != b.created_frame) return a.created_frame < b.created_frame;
                    return a.template_index < b.template_index;
                };
                if (!done || better(c, cands[*done])) done = write;
            }
        }
        cands[write++] = c;
    }
    cands.resize(write);

    if (!done) return std::nullopt;
    const ClassIndex gesture = templates[cands[*done].template_index].gesture;
    cands.clear();
    state.cooldown_left = config.cooldown;
    return gesture;
}

OnlineRecognizer::OnlineRecognizer(const DynamicModel& model) : OnlineRecognizer(model, model.config) {}

OnlineRecognizer::OnlineRecognizer(const DynamicModel& model, DynamicConfig config)
    : model_(&model), config_(config) {
    if (config_.update_interval == 0) throw std::invalid_argument("update_interval must be positive");
}

std::optional<GestureEvent> OnlineRecognizer::push(const LandmarkFrame& frame) {
    const bool process = seen_ % config_.update_interval == 0;
    ++seen_;
    if (!process) return std::nullopt;
    auto gesture = candidate_step(state_, frame, model_->templates, model_->shapes, config_);
    if (!gesture) return std::nullopt;
    return GestureEvent{frame.frame_id, *gesture};
}

void OnlineRecognizer::reset() {
    state_ = {};
    seen_ = 0;
}

}  // namespace hgr
