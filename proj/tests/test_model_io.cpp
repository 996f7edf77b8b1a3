#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "hgr/dynamic.hpp"
#include "hgr/error.hpp"
#include "hgr/model_io.hpp"
#include "synthetic.hpp"

using namespace hgr;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "hgr_model_io_test";
    fs::create_directories(dir);
    return dir / name;
}

StaticModel trained(ClassifierKind kind, bool with_filter) {
    std::mt19937_64 gen(3);
    std::vector<std::vector<double>> x;
    std::vector<ClassIndex> y;
    for (std::size_t s = 0; s < 3; ++s) {
        for (int i = 0; i < 4; ++i) {
            const auto f = hgr::testing::posed_frame(s, {0.5, 0.5, 0}, 0.08, 0.01, gen);
            x.push_back(strip_handedness(vectorize(f, 1, true)));
            y.push_back(s);
        }
    }
    std::optional<FilterConfig> filt;
    if (with_filter) filt = FilterConfig{Fusion::Median, Similarity::Euclidean, 0.2};
    ClassifierConfig cc{kind, 3, {100, 0.5, 1e-3}};
    return train_static_model(x, y, {"a", "b", "c"}, cc, filt, 1, true, builtin_setting(2));
}

}  // namespace

TEST_CASE("static models survive a save and load") {
    for (auto kind : {ClassifierKind::Knn, ClassifierKind::Centroid, ClassifierKind::LogReg}) {
        for (bool filt : {false, true}) {
            const StaticModel m = trained(kind, filt);
            const auto path = temp_file("static.json");
            save_model(to_json(m), path);
            const StaticModel back = static_model_from_json(load_model_json(path));
            CHECK(back.labels == m.labels);
            CHECK(back.setting == m.setting);
            CHECK(back.filter.has_value() == filt);
            CHECK(to_json(back) == to_json(m));

            std::mt19937_64 gen(8);
            for (int i = 0; i < 30; ++i) {
                LandmarkFrame f;
                f.hands.push_back(hgr::testing::random_hand(gen, Handedness::Left));
                CHECK(back.classify(f) == m.classify(f));
                CHECK(back.classifier->predict_scores(back.features(f)) ==
                      m.classifier->predict_scores(m.features(f)));
            }
        }
    }
}

TEST_CASE("dynamic models survive a save and load") {
    DynamicModel m;
    m.shapes = hgr::testing::train_shape_model(3);
    m.gesture_labels = {"wave", "drop"};
    m.config.keyframes = 4;
    m.config.cooldown = 7;
    m.config.use_end_shape = true;
    Direction up{{0, 1, 0}}, left{{-1, 0, 0}}, dz{{0, 0, -1}};
    m.templates.push_back({0, 1, QuantizedTrajectory{{up, left, up}}, 2, 0.125});
    m.templates.push_back({1, 0, QuantizedTrajectory{{dz, left, dz}}, std::nullopt, 0.5});

    const auto path = temp_file("dynamic.json");
    save_model(to_json(m), path);
    const DynamicModel back = dynamic_model_from_json(load_model_json(path));
    CHECK(back.gesture_labels == m.gesture_labels);
    REQUIRE(back.templates.size() == 2);
    CHECK(back.templates[0].trajectory == m.templates[0].trajectory);
    CHECK(back.templates[0].end_shape == 2u);
    CHECK_FALSE(back.templates[1].end_shape.has_value());
    CHECK(back.templates[1].step_length == 0.5);
    CHECK(back.config.keyframes == 4);
    CHECK(back.config.cooldown == 7);
    CHECK(back.config.use_end_shape);
    CHECK(to_json(back) == to_json(m));
}

TEST_CASE("newer format versions are rejected") {
    auto j = to_json(trained(ClassifierKind::Centroid, false));
    j["format_version"] = kModelFormatVersion + 1;
    const auto path = temp_file("future.json");
    save_model(j, path);
    CHECK_THROWS_AS(load_model_json(path), UnsupportedVersion);
}

TEST_CASE("malformed models raise FormatError") {
    const auto path = temp_file("broken.json");
    {
        std::ofstream(path) << "{\"format_version\": 1, \"kind\": \"static\"";
    }
    CHECK_THROWS_AS(load_model_json(path), FormatError);
    CHECK_THROWS_AS(load_model_json(temp_file("does_not_exist.json")), FormatError);

    auto j = to_json(trained(ClassifierKind::Knn, false));
    j.erase("classifier");
    CHECK_THROWS_AS(static_model_from_json(j), FormatError);
    auto d = to_json(trained(ClassifierKind::Knn, false));
    CHECK_THROWS_AS(dynamic_model_from_json(d), FormatError);
}

TEST_CASE("augmentation setting json") {
    const auto s = builtin_setting(4);
    CHECK(setting_from_json(to_json(s)) == s);
    const auto obj = nlohmann::json::parse(R"({"stages": [[0, 0], [-20, 90]]})");
    CHECK(setting_from_json(obj) == AugmentationSetting{{{0, 0}, {-20, 90}}});
    CHECK_THROWS_AS(setting_from_json(nlohmann::json::parse("[]")), FormatError);
    CHECK_THROWS_AS(setting_from_json(nlohmann::json::parse("[[1.5, 0]]")), FormatError);
    CHECK_THROWS_AS(setting_from_json(nlohmann::json::parse("{}")), FormatError);

    CHECK(resolve_setting("3") == builtin_setting(3));
    const auto path = temp_file("setting.json");
    {
        std::ofstream(path) << "[[0, 0], [30, -15]]";
    }
    CHECK(resolve_setting(path.string()) == AugmentationSetting{{{0, 0}, {30, -15}}});
    CHECK_THROWS_AS(resolve_setting("7"), UnknownSetting);
    CHECK_THROWS_AS(resolve_setting(temp_file("missing.json").string()), UnknownSetting);
}
