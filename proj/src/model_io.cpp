#include "hgr/model_io.hpp"

#include <fstream>

#include "hgr/error.hpp"

namespace hgr {

using nlohmann::json;

namespace {

const char* fusion_name(Fusion f) { return f == Fusion::Mean ? "mean" : "median"; }
const char* similarity_name(Similarity s) { return s == Similarity::Cosine ? "cosine" : "euclidean"; }

Fusion parse_fusion(const std::string& s) {
    if (s == "mean") return Fusion::Mean;
    if (s == "median") return Fusion::Median;
    throw FormatError("unknown fusion '" + s + "'");
}

Similarity parse_similarity(const std::string& s) {
    if (s == "cosine") return Similarity::Cosine;
    if (s == "euclidean") return Similarity::Euclidean;
    throw FormatError("unknown similarity '" + s + "'");
}

json classifier_to_json(const StaticClassifier& clf) {
    if (const auto* knn = dynamic_cast<const KnnClassifier*>(&clf)) {
        return {{"kind", "knn"},
                {"k", knn->k()},
                {"train_x", knn->training_vectors()},
                {"train_y", knn->training_labels()}};
    }
    if (const auto* cen = dynamic_cast<const CentroidClassifier*>(&clf)) {
        return {{"kind", "centroid"}, {"prototypes", cen->prototypes()}};
    }
    if (const auto* lr = dynamic_cast<const LogisticRegression*>(&clf)) {
        return {{"kind", "logreg"},
                {"epochs", lr->params().epochs},
                {"learning_rate", lr->params().learning_rate},
                {"l2", lr->params().l2},
                {"weights", lr->weights()}};
    }
    throw Error("classifier '" + clf.kind() + "' cannot be saved");
}

std::unique_ptr<StaticClassifier> classifier_from_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "knn") {
        auto knn = std::make_unique<KnnClassifier>(j.at("k").get<std::size_t>());
        const auto x = j.at("train_x").get<std::vector<std::vector<double>>>();
        const auto y = j.at("train_y").get<std::vector<ClassIndex>>();
        knn->fit(x, y);
        return knn;
    }
    if (kind == "centroid") {
        auto c = std::make_unique<CentroidClassifier>();
        c->set_prototypes(j.at("prototypes").get<std::vector<std::vector<double>>>());
        return c;
    }
    if (kind == "logreg") {
        LogisticParams p{j.at("epochs").get<std::size_t>(), j.at("learning_rate").get<double>(),
                         j.at("l2").get<double>()};
        auto lr = std::make_unique<LogisticRegression>(p);
        lr->set_weights(j.at("weights").get<std::vector<std::vector<double>>>());
        return lr;
    }
    throw FormatError("unknown classifier kind '" + kind + "'");
}

json direction_to_json(const Direction& d) { return json::array({d.axis[0], d.axis[1], d.axis[2]}); }

Direction direction_from_json(const json& j) {
    Direction d;
    for (std::size_t a = 0; a < 3; ++a) {
        const int v = j.at(a).get<int>();
        if (v < -1 || v > 1) throw FormatError("direction component out of range");
        d.axis[a] = static_cast<std::int8_t>(v);
    }
    return d;
}

void check_version(const json& j) {
    const int version = j.at("format_version").get<int>();
    if (version > kModelFormatVersion)
        throw UnsupportedVersion("model format_version " + std::to_string(version) + " is newer than supported " +
                                 std::to_string(kModelFormatVersion));
}

// Wraps nlohmann's type and lookup errors so callers see a FormatError.
template <typename F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed model: ") + e.what());
    }
}

}  // namespace

json to_json(const AugmentationSetting& setting) {
    json stages = json::array();
    for (const auto& s : setting.stages) stages.push_back({s.delta_b, s.delta_r});
    return stages;
}

AugmentationSetting setting_from_json(const json& j) {
    return guarded([&] {
        const json& stages = j.is_object() ? j.at("stages") : j;
        if (!stages.is_array() || stages.empty())
            throw FormatError("augmentation setting needs a non-empty stage list");
        AugmentationSetting out;
        for (const auto& s : stages) {
            if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer())
                throw FormatError("augmentation stage must be [delta_b, delta_r] integers");
            out.stages.push_back({s[0].get<int>(), s[1].get<int>()});
        }
        return out;
    });
}

AugmentationSetting resolve_setting(const std::string& spec) {
    if (spec.size() == 1 && spec[0] >= '0' && spec[0] <= '9') return builtin_setting(spec[0] - '0');
    std::ifstream in(spec);
    if (!in) throw UnknownSetting("setting '" + spec + "' is neither 1..4 nor a readable file");
    try {
        return setting_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw FormatError(spec + ": " + e.what());
    }
}

json to_json(const StaticModel& model) {
    if (!model.classifier) throw NotFitted();
    json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = "static";
    j["labels"] = model.labels;
    j["num_hands"] = model.num_hands;
    j["normalize"] = model.normalize;
    j["setting"] = to_json(model.setting);
    if (model.filter) {
        j["filter"] = {{"fusion", fusion_name(model.filter->fusion)},
                       {"similarity", similarity_name(model.filter->similarity)},
                       {"mu", model.filter->mu},
                       {"prototypes", model.filter->prototypes}};
    } else {
        j["filter"] = nullptr;
    }
    j["classifier"] = classifier_to_json(*model.classifier);
    return j;
}

StaticModel static_model_from_json(const json& j) {
    return guarded([&] {
        check_version(j);
        if (j.at("kind").get<std::string>() != "static") throw FormatError("not a static model");
        StaticModel m;
        m.labels = j.at("labels").get<std::vector<std::string>>();
        m.num_hands = j.at("num_hands").get<std::size_t>();
        m.normalize = j.at("normalize").get<bool>();
        m.setting = setting_from_json(j.at("setting"));
        if (const json& f = j.at("filter"); !f.is_null()) {
            RepresentativeSet rs;
            rs.fusion = parse_fusion(f.at("fusion").get<std::string>());
            rs.similarity = parse_similarity(f.at("similarity").get<std::string>());
            rs.mu = f.at("mu").get<double>();
            rs.prototypes = f.at("prototypes").get<std::vector<std::vector<double>>>();
            m.filter = std::move(rs);
        }
        m.classifier = classifier_from_json(j.at("classifier"));
        return m;
    });
}

json to_json(const DynamicModel& model) {
    json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = "dynamic";
    j["shape_model"] = to_json(model.shapes);
    j["gesture_labels"] = model.gesture_labels;
    const auto& c = model.config;
    j["config"] = {{"keyframes", c.keyframes},     {"deadzone", c.deadzone},
                   {"update_interval", c.update_interval}, {"max_age", c.max_age},
                   {"cooldown", c.cooldown},       {"use_end_shape", c.use_end_shape},
                   {"filter_shapes", c.filter_shapes}, {"z_weight", c.z_weight}};
    json templates = json::array();
    for (const auto& t : model.templates) {
        json steps = json::array();
        for (const auto& d : t.trajectory.steps) steps.push_back(direction_to_json(d));
        templates.push_back({{"gesture", t.gesture},
                             {"start_shape", t.start_shape},
                             {"end_shape", t.end_shape ? json(*t.end_shape) : json(nullptr)},
                             {"step_length", t.step_length},
                             {"steps", steps}});
    }
    j["templates"] = std::move(templates);
    return j;
}

DynamicModel dynamic_model_from_json(const json& j) {
    return guarded([&] {
        check_version(j);
        if (j.at("kind").get<std::string>() != "dynamic") throw FormatError("not a dynamic model");
        DynamicModel m;
        m.shapes = static_model_from_json(j.at("shape_model"));
        m.gesture_labels = j.at("gesture_labels").get<std::vector<std::string>>();
        const json& c = j.at("config");
        m.config.keyframes = c.at("keyframes").get<std::size_t>();
        m.config.deadzone = c.at("deadzone").get<double>();
        m.config.update_interval = c.at("update_interval").get<std::size_t>();
        m.config.max_age = c.at("max_age").get<std::size_t>();
        m.config.cooldown = c.at("cooldown").get<std::size_t>();
        m.config.use_end_shape = c.at("use_end_shape").get<bool>();
        m.config.filter_shapes = c.at("filter_shapes").get<bool>();
        m.config.z_weight = c.at("z_weight").get<double>();
        for (const auto& jt : j.at("templates")) {
            GestureTemplate t;
            t.gesture = jt.at("gesture").get<ClassIndex>();
            t.start_shape = jt.at("start_shape").get<ClassIndex>();
            if (!jt.at("end_shape").is_null()) t.end_shape = jt.at("end_shape").get<ClassIndex>();
            t.step_length = jt.at("step_length").get<double>();
            for (const auto& d : jt.at("steps")) t.trajectory.steps.push_back(direction_from_json(d));
            if (t.trajectory.steps.empty()) throw FormatError("template with an empty trajectory");
            m.templates.push_back(std::move(t));
        }
        return m;
    });
}

void save_model(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write model file " + path.string());
    out << j.dump(2) << '\n';
}

json load_model_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open model file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    guarded([&] {
        check_version(j);
        return 0;
    });
    return j;
}

}  // namespace hgr
