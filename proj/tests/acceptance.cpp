#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "gesture_suite.hpp"
#include "hgr/augmentation.hpp"
#include "hgr/classifier.hpp"
#include "hgr/detection.hpp"
#include "hgr/eval.hpp"
#include "hgr/landmark.hpp"
#include "hgr/trajectory.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace hgr;
using namespace hgr::testing;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        auto [ok, detail] = body();
        report(name, ok, detail);
    } catch (const std::exception& e) {
        report(name, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Detects through a mock detector per image and keeps every stage outcome, so
// that the n-shot protocol can replay them under any setting.
LabeledDataset dataset_from_images(const std::vector<Image>& images, const std::vector<std::size_t>& classes,
                                   int min_v, const AugmentationSetting& record, std::mt19937_64& gen) {
    ReplayStore store;
    std::vector<std::pair<std::string, std::string>> rows;
    for (std::size_t i = 0; i < images.size(); ++i) {
        const std::string id = "img" + std::to_string(i);
        MockDetectorSpec spec;
        spec.min_brightness = min_v;
        spec.emitted_frame = posed_frame(classes[i], {uniform(gen, 0.3, 0.7), uniform(gen, 0.3, 0.7), 0}, 0.08,
                                         0.004, gen);
        record_stages(store, images[i], record, MockDetector(spec), id);
        rows.emplace_back(id, "shape" + std::to_string(classes[i]));
    }
    return make_dataset(std::move(store), rows);
}

std::pair<bool, std::string> augmentation_recovery() {
    const auto t0 = Clock::now();
    std::mt19937_64 gen(2024);
    const int threshold = 130;
    std::vector<Image> images;
    std::vector<std::size_t> classes;
    for (std::size_t c = 0; c < 4; ++c) {
        for (int i = 0; i < 20; ++i) {
            const bool dark = i % 2 == 0;
            const int v = dark ? threshold - 20 - static_cast<int>(uniform_below(gen, 21))
                               : threshold + static_cast<int>(uniform_below(gen, 60));
            images.push_back(uniform_image(48, 48, v, gen));
            classes.push_back(c);
        }
    }
    const auto data = dataset_from_images(images, classes, threshold, builtin_setting(2), gen);
    EvalConfig s1;
    s1.classifier = {ClassifierKind::Knn, 1, {}};
    EvalConfig s2 = s1;
    s2.setting = builtin_setting(2);
    const NShotPlan plan{3, 10, 7};
    const auto a = run_nshot(data, plan, s1);
    const auto b = run_nshot(data, plan, s2);
    const double elapsed = seconds_since(t0);
    const bool ok = a.r == 0.5 && b.r == 1.0 && b.m == 2.0 * a.m && elapsed < 5.0;
    return {ok, fmt("r=%.3f -> %.3f, m=%.4f -> %.4f (ratio %.6f), %.2fs", a.r, b.r, a.m, b.m, b.m / a.m, elapsed)};
}

std::pair<bool, std::string> setting_monotonicity() {
    std::mt19937_64 gen(77);
    const int rotations[] = {0, -15, 15, -30, 30};
    std::size_t violations = 0;
    const std::size_t configs = 120;
    for (std::size_t k = 0; k < configs; ++k) {
        MockDetectorSpec spec;
        spec.min_brightness = static_cast<int>(uniform_below(gen, 200));
        spec.max_brightness = spec.min_brightness + static_cast<int>(uniform_below(gen, 256 - spec.min_brightness));
        spec.accept_rotation.clear();
        for (int r : rotations)
            if (gen() % 2) spec.accept_rotation.insert(r);
        spec.emitted_frame = posed_frame(0, {0.5, 0.5, 0}, 0.08, 0.0, gen);
        const MockDetector det(spec);
        std::vector<Image> images;
        for (int i = 0; i < 12; ++i)
            images.push_back(uniform_image(16, 16, static_cast<int>(uniform_below(gen, 256)), gen));
        double r[5] = {};
        for (int s = 1; s <= 4; ++s) {
            std::size_t found = 0;
            for (const auto& img : images) found += try_detect_with_augmentations(img, builtin_setting(s), det).has_value();
            r[s] = compute_metric(images.size(), found, found).r;
        }
        for (int s = 1; s <= 3; ++s) violations += r[4] < r[s];
    }
    return {violations == 0, fmt("%zu configurations, %zu violations", configs, violations)};
}

std::pair<bool, std::string> brightness_conformance() {
    std::mt19937_64 gen(1);
    std::size_t pixels = 0, v_mismatch = 0, rgb_mismatch = 0;
    for (int round = 0; round < 25; ++round) {
        const Image img = random_image(200, 200, gen);
        const int db = static_cast<int>(uniform_below(gen, 601)) - 300;
        const Image out = adjust_brightness(img, db);
        for (std::size_t i = 0; i < img.pixels().size(); ++i) {
            const Rgb p = img.pixels()[i], q = out.pixels()[i];
            const int v = std::max({p.r, p.g, p.b});
            const int v_out = std::max({q.r, q.g, q.b});
            v_mismatch += v_out != oracle::brightness_reference(v, db);
            rgb_mismatch += std::array<int, 3>{q.r, q.g, q.b} != oracle::brightness_pixel_reference({p.r, p.g, p.b}, db);
            ++pixels;
        }
    }
    return {v_mismatch == 0 && rgb_mismatch == 0,
            fmt("%zu pixels, %zu value mismatches, %zu channel mismatches", pixels, v_mismatch, rgb_mismatch)};
}

std::pair<bool, std::string> vector_layout() {
    std::mt19937_64 gen(3);
    std::size_t frames = 0, bad = 0;
    for (int i = 0; i < 2000; ++i) {
        const int pattern = i % 3;  // 0 left only, 1 right only, 2 both
        LandmarkFrame f;
        Hand left = random_hand(gen, Handedness::Left), right = random_hand(gen, Handedness::Right);
        if (pattern != 1) f.hands.push_back(left);
        if (pattern != 0) f.hands.push_back(right);
        if (gen() % 2) std::reverse(f.hands.begin(), f.hands.end());
        ++frames;

        const auto one = vectorize(f, 1, false);
        bad += one.values.size() != 64;
        const auto two = vectorize(f, 2, false);
        if (two.values.size() != 128) {
            ++bad;
            continue;
        }
        const Hand* slots[2] = {pattern != 1 ? &left : nullptr, pattern != 0 ? &right : nullptr};
        for (int s = 0; s < 2; ++s) {
            for (std::size_t j = 0; j < kLandmarksPerHand; ++j) {
                const std::size_t o = static_cast<std::size_t>(s) * 63 + 3 * j;
                const Landmark want = slots[s] ? slots[s]->landmarks[j] : Landmark{};
                bad += two.values[o] != want.x || two.values[o + 1] != want.y || two.values[o + 2] != want.z;
            }
            const double want_h = slots[s] ? static_cast<double>(s) : -1.0;
            bad += two.values[126 + static_cast<std::size_t>(s)] != want_h;
        }
    }
    return {bad == 0, fmt("%zu frames over 3 presence patterns, %zu layout errors", frames, bad)};
}

std::pair<bool, std::string> knn_oracle() {
    std::mt19937_64 gen(5);
    std::size_t predictions = 0, disagreements = 0;
    for (int inst = 0; inst < 1000; ++inst) {
        const std::size_t n = 5 + uniform_below(gen, 196), dim = 1 + uniform_below(gen, 64);
        const std::size_t classes = 2 + uniform_below(gen, 5);
        const bool grid = inst % 2 == 0;  // integer grid forces distance ties
        std::vector<std::vector<double>> x(n, std::vector<double>(dim));
        std::vector<std::size_t> y(n);
        auto coord = [&] { return grid ? double(uniform_below(gen, 3)) : uniform(gen, -1, 1); };
        for (std::size_t i = 0; i < n; ++i) {
            for (auto& v : x[i]) v = coord();
            y[i] = uniform_below(gen, classes);
        }
        for (std::size_t k : {1u, 3u, 5u}) {
            KnnClassifier knn(k);
            knn.fit(x, y);
            for (int q = 0; q < 3; ++q) {
                std::vector<double> query(dim);
                for (auto& v : query) v = coord();
                ++predictions;
                disagreements += knn.predict(query) != oracle::knn_predict(x, y, query, k);
            }
        }
    }
    return {disagreements == 0, fmt("1000 instances, %zu predictions, %zu disagreements", predictions, disagreements)};
}

std::pair<bool, std::string> logistic_gradient() {
    std::mt19937_64 gen(9);
    double worst = 0.0;
    for (int inst = 0; inst < 100; ++inst) {
        const std::size_t n = 2 + uniform_below(gen, 12), dim = 1 + uniform_below(gen, 6);
        const std::size_t classes = 2 + uniform_below(gen, 3);
        std::vector<std::vector<double>> x(n, std::vector<double>(dim));
        std::vector<ClassIndex> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (auto& v : x[i]) v = uniform(gen, -2, 2);
            y[i] = uniform_below(gen, classes);
        }
        LogisticObjective obj{x, y, classes, uniform(gen, 0.0, 0.5)};
        std::vector<double> theta(obj.num_params());
        for (auto& t : theta) t = uniform(gen, -1.5, 1.5);
        std::vector<double> grad(theta.size());
        obj.loss_and_gradient(theta, grad);
        const auto num = oracle::numeric_gradient([&](std::span<const double> p) { return obj.loss(p); }, theta);
        worst = std::max(worst, oracle::relative_error(grad, num));
    }
    return {worst < 1e-5, fmt("100 instances, worst relative error %.3e", worst)};
}

std::pair<bool, std::string> spike_robustness() {
    std::mt19937_64 gen(13);
    std::size_t same = 0;
    const std::size_t trials = 500;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto walk = smooth_walk(gen, 8 + uniform_below(gen, 120));
        const std::size_t at = uniform_below(gen, walk.size() - 1);
        const auto spiked = with_spike(walk, at, gen);
        const std::size_t k = 2 + uniform_below(gen, 9);
        same += extract_keyframes(remove_outliers(walk), k) == extract_keyframes(remove_outliers(spiked), k);
    }
    return {same == trials, fmt("%zu/%zu trajectories with identical keyframes", same, trials)};
}

std::pair<bool, std::string> keyframe_spacing() {
    std::mt19937_64 gen(17);
    std::size_t checks = 0, over = 0;
    double worst_ratio = 0.0;
    for (int t = 0; t < 300; ++t) {
        std::vector<TrajectoryPoint> p;
        Vec3 pos{0, 0, 0};
        const std::size_t n = 100 + uniform_below(gen, 400);
        for (std::size_t i = 0; i < n; ++i) {
            p.push_back({pos, i});
            const double step = gen() % 4 == 0 ? 0.0 : uniform(gen, 0.0, 1.0) * (gen() % 10 == 0 ? 8.0 : 1.0);
            const double ang = uniform(gen, 0, 6.283185307179586);
            pos = {pos[0] + step * std::cos(ang), pos[1] + step * std::sin(ang), uniform(gen, -0.1, 0.1)};
        }
        const auto cum = cumulative_arc(p);
        const double gap = oracle::max_gap(cum);
        const std::size_t k = 2 + uniform_below(gen, 15);
        const auto idx = keyframe_indices(p, k);
        for (std::size_t j = 0; j < k; ++j) {
            const double target = cum.back() * static_cast<double>(j) / static_cast<double>(k - 1);
            const double dev = std::abs(cum[idx[j]] - target);
            worst_ratio = std::max(worst_ratio, dev / gap);
            over += dev > gap + 1e-9;
            ++checks;
        }
    }
    return {over == 0, fmt("%zu keyframes, %zu beyond the max gap, worst deviation %.3f gaps", checks, over,
                           worst_ratio)};
}

std::pair<bool, std::string> online_recall_precision() {
    const auto suite = gesture_suite();
    DynamicConfig cfg;  // keyframes 6, deadzone 0.15, update interval 3
    const auto model = suite_model(suite, cfg);
    std::mt19937_64 gen(31);
    const auto stream = suite_stream(suite, 10, gen, 0.004);
    const auto plain = score_stream(stream, model, cfg);
    DynamicConfig muted = cfg;
    muted.cooldown = 8;
    const auto cooled = score_stream(stream, model, muted);
    const bool ok = model.templates.size() >= 6 && plain.recall() == 1.0 && cooled.recall() == 1.0 &&
                    cooled.precision() >= 0.95;
    return {ok, fmt("%zu templates, %zu performances, recall %.3f (%.3f with cooldown), precision %.3f without "
                    "cooldown, %.3f with",
                    model.templates.size(), plain.performances, plain.recall(), cooled.recall(), plain.precision(),
                    cooled.precision())};
}

std::pair<bool, std::string> throughput() {
    const auto suite = gesture_suite();
    DynamicConfig cfg;
    const auto model = suite_model(suite, cfg);
    std::mt19937_64 gen(37);
    auto stream = suite_stream(suite, 40, gen, 0.004);
    stream.frames.resize(10000);
    CandidateState state;
    std::size_t events = 0;
    const auto t0 = Clock::now();
    for (const auto& f : stream.frames) events += candidate_step(state, f, model.templates, model.shapes, cfg).has_value();
    const double elapsed = seconds_since(t0);
    const double fps = static_cast<double>(stream.frames.size()) / elapsed;
    return {fps >= 1000.0 && model.templates.size() == 10,
            fmt("%zu frames, %zu templates, %.0f frames/s (%zu events)", stream.frames.size(), model.templates.size(),
                fps, events)};
}

std::pair<bool, std::string> metric_identity() {
    std::mt19937_64 gen(41);
    std::size_t bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const std::size_t n = 1 + uniform_below(gen, 100000);
        const std::size_t d = uniform_below(gen, n + 1);
        const std::size_t k = uniform_below(gen, d + 1);
        const auto m = compute_metric(n, d, k);
        bad += m.m != m.c * m.r;
        bad += std::abs(m.m - double(k) / double(n)) > 1e-12;
    }
    const auto data = mock_dataset(4, 12, 3, 5);
    EvalConfig ec;
    ec.setting = builtin_setting(4);
    ec.classifier = {ClassifierKind::Knn, 3, {}};
    ec.filter = FilterConfig{};
    const NShotPlan plan{2, 8, 2718};
    const auto a = to_json(run_nshot(data, plan, ec)).dump();
    const auto b = to_json(run_nshot(data, plan, ec)).dump();
    ec.parallel = true;
    const auto c = to_json(run_nshot(data, plan, ec)).dump();
    return {bad == 0 && a == b && a == c,
            fmt("10000 triples, %zu identity failures; seeded reports %s", bad,
                a == b && a == c ? "byte-identical (sequential and parallel)" : "differ")};
}

}  // namespace

int main() {
    run("augmentation-recovery", augmentation_recovery);
    run("setting-subset-monotonicity", setting_monotonicity);
    run("brightness-update-conformance", brightness_conformance);
    run("vector-layout", vector_layout);
    run("knn-oracle-equivalence", knn_oracle);
    run("logistic-gradient-check", logistic_gradient);
    run("spike-robustness", spike_robustness);
    run("keyframe-spacing", keyframe_spacing);
    run("online-recall-precision", online_recall_precision);
    run("online-throughput", throughput);
    run("metric-identity", metric_identity);
    std::printf("%s: %d failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
