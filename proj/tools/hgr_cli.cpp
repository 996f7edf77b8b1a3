#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "hgr/dynamic.hpp"
#include "hgr/error.hpp"
#include "hgr/eval.hpp"
#include "hgr/image.hpp"
#include "hgr/model_io.hpp"
#include "hgr/replay_io.hpp"

namespace fs = std::filesystem;
using namespace hgr;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StaticOptions {
    std::string setting = "1";
    std::string classifier = "knn";
    std::size_t k = 5;
    std::size_t num_hands = 1;
    bool raw = false;
    std::string filter = "none";
    std::string similarity = "cosine";
    double mu = 0.93;
    std::size_t epochs = 500;
    double learning_rate = 0.5;
    double l2 = 1e-3;
};

void add_static_options(CLI::App* cmd, StaticOptions& o) {
    cmd->add_option("--setting", o.setting, "Augmentation setting: 1..4 or a JSON stage file")->capture_default_str();
    cmd->add_option("--classifier", o.classifier, "knn, centroid or logreg")
        ->check(CLI::IsMember({"knn", "centroid", "logreg"}))
        ->capture_default_str();
    cmd->add_option("--k", o.k, "Neighbours for knn")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--num-hands", o.num_hands, "Hands per feature vector")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    cmd->add_flag("--raw", o.raw, "Skip per-hand normalization");
    cmd->add_option("--filter", o.filter, "False-positive filter fusion: none, mean or median")
        ->check(CLI::IsMember({"none", "mean", "median"}))
        ->capture_default_str();
    cmd->add_option("--similarity", o.similarity, "Filter similarity: cosine or euclidean")
        ->check(CLI::IsMember({"cosine", "euclidean"}))
        ->capture_default_str();
    cmd->add_option("--mu", o.mu, "Filter acceptance threshold")->capture_default_str();
    cmd->add_option("--epochs", o.epochs, "logreg gradient steps")->capture_default_str();
    cmd->add_option("--lr", o.learning_rate, "logreg learning rate")->capture_default_str();
    cmd->add_option("--l2", o.l2, "logreg L2 strength")->capture_default_str();
}

ClassifierConfig classifier_config(const StaticOptions& o) {
    ClassifierConfig c;
    c.kind = *parse_classifier_kind(o.classifier);
    c.k = o.k;
    c.logistic = {o.epochs, o.learning_rate, o.l2};
    return c;
}

std::optional<FilterConfig> filter_config(const StaticOptions& o) {
    if (o.filter == "none") return std::nullopt;
    FilterConfig f;
    f.fusion = o.filter == "median" ? Fusion::Median : Fusion::Mean;
    f.similarity = o.similarity == "euclidean" ? Similarity::Euclidean : Similarity::Cosine;
    f.mu = o.mu;
    return f;
}

AugmentationSetting setting_arg(const std::string& spec) {
    try {
        return resolve_setting(spec);
    } catch (const UnknownSetting& e) {
        throw UsageError(e.what());
    }
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int train_static(const std::string& data_dir, const StaticOptions& o, const std::string& out) {
    const auto setting = setting_arg(o.setting);
    std::vector<std::string> warnings;
    const auto data = load_dataset_dir(data_dir, &warnings);
    print_warnings(warnings);
    const auto feats = detect_dataset(data, setting, o.num_hands, !o.raw);

    std::vector<std::vector<double>> x;
    std::vector<ClassIndex> y;
    for (std::size_t i = 0; i < feats.size(); ++i) {
        if (!feats[i]) continue;
        x.push_back(*feats[i]);
        y.push_back(data.labels[i]);
    }
    if (x.empty()) throw Error("no sample in " + data_dir + " was detected under the chosen setting");

    const StaticModel model = train_static_model(x, y, data.class_names, classifier_config(o), filter_config(o),
                                                 o.num_hands, !o.raw, setting);
    save_model(to_json(model), out);
    const auto m = compute_metric(feats.size(), x.size(), x.size());
    std::cout << "trained " << model.classifier->kind() << " on " << x.size() << "/" << feats.size()
              << " detected samples (r=" << m.r << "), " << data.class_names.size() << " classes -> " << out << "\n";
    return 0;
}

int eval_static(const std::string& data_dir, const StaticOptions& o, const NShotPlan& plan, bool parallel) {
    EvalConfig cfg;
    cfg.setting = setting_arg(o.setting);
    cfg.classifier = classifier_config(o);
    cfg.filter = filter_config(o);
    cfg.num_hands = o.num_hands;
    cfg.normalize = !o.raw;
    cfg.parallel = parallel;
    std::vector<std::string> warnings;
    const auto data = load_dataset_dir(data_dir, &warnings);
    print_warnings(warnings);
    std::cout << to_json(run_nshot(data, plan, cfg)).dump(2) << "\n";
    return 0;
}

// Sequence directories hold either labels.csv plus <sample_id>.jsonl files,
// or one subdirectory of .jsonl files per gesture.
std::vector<std::pair<fs::path, std::string>> sequence_files(const fs::path& dir) {
    std::vector<std::pair<fs::path, std::string>> out;
    if (!fs::is_directory(dir)) throw FormatError("not a directory: " + dir.string());
    if (fs::exists(dir / "labels.csv")) {
        for (const auto& [id, label] : load_labels(dir / "labels.csv")) {
            const auto file = dir / (id + ".jsonl");
            if (!fs::exists(file)) throw FormatError("missing sequence file " + file.string());
            out.emplace_back(file, label);
        }
        return out;
    }
    for (const auto& cls : fs::directory_iterator(dir)) {
        if (!cls.is_directory()) continue;
        for (const auto& f : fs::directory_iterator(cls.path()))
            if (f.is_regular_file() && f.path().extension() == ".jsonl")
                out.emplace_back(f.path(), cls.path().filename().string());
    }
    std::sort(out.begin(), out.end());
    if (out.empty()) throw FormatError("no sequences found under " + dir.string());
    return out;
}

int train_dynamic(const std::string& data_dir, const std::string& shape_model, const DynamicConfig& config,
                  const std::string& out) {
    DynamicModel model;
    model.shapes = static_model_from_json(load_model_json(shape_model));
    model.config = config;

    const auto files = sequence_files(data_dir);
    std::map<std::string, ClassIndex> ids;
    for (const auto& [file, label] : files) ids.emplace(label, 0);
    for (auto& [label, idx] : ids) {
        idx = model.gesture_labels.size();
        model.gesture_labels.push_back(label);
    }
    std::vector<TrainingSequence> train;
    for (const auto& [file, label] : files)
        train.push_back({file.stem().string(), ids.at(label), load_sequence(file, model.shapes.setting)});

    model.templates = fit_dynamic(train, model.shapes, config);
    save_model(to_json(model), out);
    std::cout << "fitted " << model.templates.size() << " templates for " << model.gesture_labels.size()
              << " gestures from " << train.size() << " sequences -> " << out << "\n";
    for (const auto& t : model.templates) {
        std::cout << "  " << model.gesture_labels[t.gesture] << ": " << model.shapes.labels[t.start_shape] << " ";
        for (const auto& s : t.trajectory.steps) std::cout << s.to_string();
        if (t.end_shape) std::cout << " " << model.shapes.labels[*t.end_shape];
        std::cout << "\n";
    }
    return 0;
}

int run_online(const std::string& model_path, const std::string& stream, std::optional<std::size_t> interval,
               std::optional<std::size_t> cooldown) {
    const DynamicModel model = dynamic_model_from_json(load_model_json(model_path));
    DynamicConfig cfg = model.config;
    if (interval) cfg.update_interval = *interval;
    if (cooldown) cfg.cooldown = *cooldown;
    if (cfg.update_interval == 0) throw UsageError("--update-interval must be positive");

    std::ifstream file;
    std::istream* in = &std::cin;
    if (stream != "-") {
        file.open(stream);
        if (!file) throw FormatError("cannot open stream " + stream);
        in = &file;
    }
    SequenceReader reader(*in, model.shapes.setting, stream == "-" ? "<stdin>" : stream);
    OnlineRecognizer rec(model, cfg);
    while (auto frame = reader.next()) {
        if (auto e = rec.push(*frame)) std::cout << e->frame_id << '\t' << model.gesture_labels[e->gesture] << std::endl;
    }
    return 0;
}

int augment_preview(const std::string& image, const std::string& setting_spec, const std::string& out_dir) {
    const auto setting = setting_arg(setting_spec);
    const Image img = read_ppm(image);
    fs::create_directories(out_dir);
    const std::string stem = fs::path(image).stem().string();
    for (std::size_t i = 0; i < setting.stages.size(); ++i) {
        const auto& s = setting.stages[i];
        const auto path = fs::path(out_dir) / (stem + "_stage" + std::to_string(i) + "_b" + std::to_string(s.delta_b) +
                                               "_r" + std::to_string(s.delta_r) + ".ppm");
        write_ppm(apply_stage(img, s), path);
        std::cout << path.string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hand gesture recognition engine: static shapes, dynamic gestures and n-shot evaluation"};
    app.require_subcommand(1);

    std::string data, out, model, stream = "-", image, shape_model, out_dir = ".";
    StaticOptions so;
    NShotPlan plan;
    bool parallel = false;
    DynamicConfig dyn;
    std::optional<std::size_t> interval, cooldown;
    std::string preview_setting = "4";

    auto* ts = app.add_subcommand("train-static", "Train a static shape classifier from a replay dataset");
    ts->add_option("--data", data, "Directory with labels.csv and replay .jsonl files")->required();
    add_static_options(ts, so);
    ts->add_option("--out", out, "Model file to write")->required();

    auto* es = app.add_subcommand("eval-static", "Run the n-shot protocol and print a JSON report");
    es->add_option("--data", data, "Directory with labels.csv and replay .jsonl files")->required();
    es->add_option("--n", plan.n, "Training samples per class")->required()->check(CLI::PositiveNumber);
    es->add_option("--reps", plan.repetitions, "Repetitions")->check(CLI::PositiveNumber)->capture_default_str();
    es->add_option("--seed", plan.seed, "Sampling seed")->capture_default_str();
    es->add_flag("--parallel", parallel, "Run repetitions concurrently");
    add_static_options(es, so);

    auto* td = app.add_subcommand("train-dynamic", "Fit dynamic gesture templates from recorded sequences");
    td->add_option("--data", data, "Sequence directory")->required();
    td->add_option("--shape-model", shape_model, "Static model used to classify start and end shapes")->required();
    td->add_option("--keyframes", dyn.keyframes, "Keyframes per trajectory")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000}))
        ->capture_default_str();
    td->add_option("--deadzone", dyn.deadzone, "Stationary threshold relative to the step length")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    td->add_option("--update-interval", dyn.update_interval, "Camera frames per processed frame")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    td->add_option("--max-age", dyn.max_age, "Processed frames a candidate may live")->capture_default_str();
    td->add_option("--cooldown", dyn.cooldown, "Processed frames muted after a prediction")->capture_default_str();
    td->add_flag("--end-shape", dyn.use_end_shape, "Require the end shape before predicting");
    td->add_flag("--filter-shapes", dyn.filter_shapes, "Gate shape classification with the shape model's filter");
    td->add_option("--z-weight", dyn.z_weight, "Weight of depth in distances and directions")->capture_default_str();
    td->add_option("--out", out, "Model file to write")->required();

    auto* ro = app.add_subcommand("run-online", "Spot dynamic gestures in a landmark stream");
    ro->add_option("--model", model, "Dynamic model file")->required();
    ro->add_option("--stream", stream, "Replay sequence file, or - for stdin")->capture_default_str();
    ro->add_option("--update-interval", interval, "Override the model's update interval");
    ro->add_option("--cooldown", cooldown, "Override the model's cooldown");

    auto* ap = app.add_subcommand("augment-preview", "Write every augmented stage of an image");
    ap->add_option("--image", image, "Binary PPM (P6) image")->required();
    ap->add_option("--setting", preview_setting, "Augmentation setting: 1..4 or a JSON stage file")
        ->capture_default_str();
    ap->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*ts) return train_static(data, so, out);
        if (*es) return eval_static(data, so, plan, parallel);
        if (*td) return train_dynamic(data, shape_model, dyn, out);
        if (*ro) return run_online(model, stream, interval, cooldown);
        if (*ap) return augment_preview(image, preview_setting, out_dir);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsageError;
}
