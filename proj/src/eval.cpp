#include "hgr/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <set>

#include "hgr/error.hpp"
#include "hgr/model_io.hpp"
#include "hgr/replay_io.hpp"
#include "hgr/rng.hpp"

namespace hgr {

Metric compute_metric(std::size_t total, std::size_t detected, std::size_t correct) {
    if (total == 0 || detected > total || correct > detected)
        throw InvalidCounts("invalid counts N=" + std::to_string(total) + " M=" + std::to_string(detected) +
                            " correct=" + std::to_string(correct));
    Metric out{total, detected, correct};
    out.r = static_cast<double>(detected) / static_cast<double>(total);
    out.c = detected == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(detected);
    out.m = out.c * out.r;
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> load_labels(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open labels file " + path.string());
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::pair<std::string, std::string>> rows;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line_no == 1) {
            if (line != "sample_id,class_label")
                throw FormatError(path.string(), line_no, "expected header 'sample_id,class_label'");
            continue;
        }
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw FormatError(path.string(), line_no, "expected two comma-separated fields");
        std::string id = trim(line.substr(0, comma));
        std::string label = trim(line.substr(comma + 1));
        if (id.empty() || label.empty()) throw FormatError(path.string(), line_no, "empty field");
        if (!seen.insert(id).second) throw FormatError(path.string(), line_no, "duplicate sample_id '" + id + "'");
        rows.emplace_back(std::move(id), std::move(label));
    }
    if (line_no == 0) throw FormatError(path.string(), 1, "missing header");
    return rows;
}

LabeledDataset make_dataset(ReplayStore store, const std::vector<std::pair<std::string, std::string>>& rows) {
    LabeledDataset data;
    data.store = std::move(store);
    std::set<std::string> names;
    for (const auto& [id, label] : rows) names.insert(label);
    data.class_names.assign(names.begin(), names.end());
    for (const auto& [id, label] : rows) {
        data.sample_ids.push_back(id);
        const auto it = std::lower_bound(data.class_names.begin(), data.class_names.end(), label);
        data.labels.push_back(static_cast<ClassIndex>(it - data.class_names.begin()));
    }
    return data;
}

LabeledDataset load_dataset_dir(const std::filesystem::path& dir, std::vector<std::string>* warnings) {
    const auto rows = load_labels(dir / "labels.csv");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    ReplayStore store;
    LoadDiagnostics diag;
    for (const auto& f : files) {
        std::ifstream in(f);
        load_replay_into(store, in, f.string(), &diag);
    }
    if (warnings) warnings->insert(warnings->end(), diag.warnings.begin(), diag.warnings.end());
    return make_dataset(std::move(store), rows);
}

std::vector<std::optional<std::vector<double>>> detect_dataset(const LabeledDataset& data,
                                                               const AugmentationSetting& setting,
                                                               std::size_t num_hands, bool normalize) {
    const ReplayDetector detector(data.store);
    const Image none;
    std::vector<std::optional<std::vector<double>>> out;
    out.reserve(data.sample_ids.size());
    for (const auto& id : data.sample_ids) {
        auto found = try_detect_with_augmentations(none, setting, detector, id);
        if (found)
            out.emplace_back(strip_handedness(vectorize(found->frame, num_hands, normalize)));
        else
            out.emplace_back(std::nullopt);
    }
    return out;
}

namespace {

struct RunOutput {
    RepetitionResult result;
    std::vector<std::vector<std::size_t>> confusion;
};

RunOutput run_repetition(const LabeledDataset& data, const std::vector<std::optional<std::vector<double>>>& feats,
                         const std::vector<std::vector<std::size_t>>& pools, const NShotPlan& plan,
                         const EvalConfig& config, std::size_t rep, const Metric& detection) {
    const std::size_t classes = data.class_names.size();
    std::mt19937_64 gen(repetition_seed(plan.seed, rep));

    std::vector<char> in_train(data.sample_ids.size(), 0);
    std::vector<std::vector<double>> train_x;
    std::vector<ClassIndex> train_y;
    for (std::size_t c = 0; c < classes; ++c) {
        for (std::size_t i : sample_without_replacement(pools[c], plan.n, gen)) {
            in_train[i] = 1;
            train_x.push_back(*feats[i]);
            train_y.push_back(c);
        }
    }

    const StaticModel model = train_static_model(train_x, train_y, data.class_names, config.classifier,
                                                 config.filter, config.num_hands, config.normalize, config.setting);
    const RepresentativeSet* filt = model.filter ? &*model.filter : nullptr;

    RunOutput out;
    out.confusion.assign(classes, std::vector<std::size_t>(classes + 1, 0));
    std::size_t evaluated = 0, correct = 0;
    for (std::size_t i = 0; i < feats.size(); ++i) {
        if (in_train[i] || !feats[i]) continue;
        ++evaluated;
        const auto pred = classify(*feats[i], filt, *model.classifier);
        const std::size_t col = pred ? *pred : classes;
        ++out.confusion[data.labels[i]][col];
        if (pred && *pred == data.labels[i]) ++correct;
    }

    const Metric cls = compute_metric(std::max<std::size_t>(evaluated, 1), evaluated, correct);
    out.result.r = detection.r;
    out.result.c = cls.c;
    out.result.m = cls.c * detection.r;
    out.result.evaluated = evaluated;
    out.result.correct = correct;
    return out;
}

}  // namespace

EvalReport run_nshot(const LabeledDataset& data, const NShotPlan& plan, const EvalConfig& config) {
    if (plan.n == 0) throw std::invalid_argument("n must be at least 1");
    if (plan.repetitions == 0) throw std::invalid_argument("at least one repetition is required");
    if (data.sample_ids.empty()) throw InvalidCounts("dataset has no samples");

    const auto feats = detect_dataset(data, config.setting, config.num_hands, config.normalize);
    const std::size_t classes = data.class_names.size();
    std::vector<std::vector<std::size_t>> pools(classes);
    std::size_t detected = 0;
    for (std::size_t i = 0; i < feats.size(); ++i) {
        if (!feats[i]) continue;
        ++detected;
        pools[data.labels[i]].push_back(i);
    }
    for (std::size_t c = 0; c < classes; ++c)
        if (pools[c].size() < plan.n + 1) throw InsufficientSamples(data.class_names[c], pools[c].size(), plan.n + 1);

    const Metric detection = compute_metric(feats.size(), detected, detected);

    std::vector<RunOutput> runs(plan.repetitions);
    if (config.parallel) {
        std::vector<std::future<RunOutput>> pending;
        for (std::size_t rep = 0; rep < plan.repetitions; ++rep)
            pending.push_back(std::async(std::launch::async, run_repetition, std::cref(data), std::cref(feats),
                                         std::cref(pools), std::cref(plan), std::cref(config), rep,
                                         std::cref(detection)));
        for (std::size_t rep = 0; rep < plan.repetitions; ++rep) runs[rep] = pending[rep].get();
    } else {
        for (std::size_t rep = 0; rep < plan.repetitions; ++rep)
            runs[rep] = run_repetition(data, feats, pools, plan, config, rep, detection);
    }

    EvalReport report;
    report.plan = plan;
    report.total = feats.size();
    report.detected = detected;
    report.r = detection.r;
    report.class_names = data.class_names;
    report.confusion.assign(classes, std::vector<std::size_t>(classes + 1, 0));

    double sum_c = 0.0, sum_m = 0.0;
    for (const auto& run : runs) {
        report.repetitions.push_back(run.result);
        sum_c += run.result.c;
        sum_m += run.result.m;
        for (std::size_t a = 0; a < classes; ++a)
            for (std::size_t b = 0; b <= classes; ++b) report.confusion[a][b] += run.confusion[a][b];
    }
    const double reps = static_cast<double>(plan.repetitions);
    report.c = sum_c / reps;
    report.m = report.c * report.r;
    report.mean_m = sum_m / reps;
    double var = 0.0;
    for (const auto& run : runs) var += (run.result.m - report.mean_m) * (run.result.m - report.mean_m);
    report.std_m = std::sqrt(var / reps);
    return report;
}

nlohmann::json to_json(const EvalReport& report) {
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& r : report.repetitions)
        reps.push_back({{"r", r.r}, {"c", r.c}, {"m", r.m}, {"evaluated", r.evaluated}, {"correct", r.correct}});
    return {{"n", report.plan.n},
            {"repetitions_requested", report.plan.repetitions},
            {"seed", report.plan.seed},
            {"N", report.total},
            {"M", report.detected},
            {"r", report.r},
            {"c", report.c},
            {"m", report.m},
            {"mean_m", report.mean_m},
            {"std_m", report.std_m},
            {"classes", report.class_names},
            {"confusion", report.confusion},
            {"repetitions", reps}};
}

}  // namespace hgr
