#include "hgr/replay_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hgr/error.hpp"

namespace hgr {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw FormatError(source, line, what);
}

const json& require(const json& obj, const char* field, const std::string& source, std::size_t line) {
    auto it = obj.find(field);
    if (it == obj.end()) fail(source, line, std::string("missing field '") + field + "'");
    return *it;
}

int require_int(const json& obj, const char* field, const std::string& source, std::size_t line) {
    const json& v = require(obj, field, source, line);
    if (!v.is_number_integer()) fail(source, line, std::string("field '") + field + "' must be an integer");
    return v.get<int>();
}

Hand parse_hand(const json& jh, const std::string& source, std::size_t line) {
    if (!jh.is_object()) fail(source, line, "hand entry must be an object");
    Hand hand;
    const json& side = require(jh, "handedness", source, line);
    auto parsed = side.is_string() ? parse_handedness(side.get<std::string>()) : std::nullopt;
    if (!parsed) fail(source, line, "handedness must be \"Left\" or \"Right\"");
    hand.handedness = *parsed;

    if (auto it = jh.find("score"); it != jh.end()) {
        if (!it->is_number()) fail(source, line, "score must be a number");
        hand.score = it->get<double>();
    }

    const json& lms = require(jh, "landmarks", source, line);
    if (!lms.is_array() || lms.size() != kLandmarksPerHand)
        fail(source, line,
             "expected " + std::to_string(kLandmarksPerHand) + " landmarks, got " +
                 std::to_string(lms.is_array() ? lms.size() : 0));
    for (std::size_t i = 0; i < kLandmarksPerHand; ++i) {
        const json& p = lms[i];
        if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number())
            fail(source, line, "landmark " + std::to_string(i) + " must be [x, y, z]");
        Landmark lm{p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
        if (!std::isfinite(lm.x) || !std::isfinite(lm.y) || !std::isfinite(lm.z))
            fail(source, line, "landmark " + std::to_string(i) + " is not finite");
        hand.landmarks[i] = lm;
    }
    return hand;
}

}  // namespace

ReplayRecord parse_replay_line(const std::string& text, const std::string& source, std::size_t line_no) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(source, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail(source, line_no, "record must be a JSON object");

    ReplayRecord rec;
    const json& id = require(j, "sample_id", source, line_no);
    if (!id.is_string()) fail(source, line_no, "sample_id must be a string");
    rec.key.sample_id = id.get<std::string>();
    rec.key.delta_b = require_int(j, "db", source, line_no);
    rec.key.delta_r = require_int(j, "dr", source, line_no);

    if (auto it = j.find("frame_id"); it != j.end()) {
        if (!it->is_number_unsigned()) fail(source, line_no, "frame_id must be a non-negative integer");
        rec.frame.frame_id = it->get<std::uint64_t>();
        rec.has_frame_id = true;
    }
    if (auto it = j.find("timestamp"); it != j.end() && !it->is_null()) {
        if (!it->is_number()) fail(source, line_no, "timestamp must be a number");
        rec.frame.timestamp = it->get<double>();
    }

    const json& hands = require(j, "hands", source, line_no);
    if (!hands.is_array()) fail(source, line_no, "hands must be an array");
    if (hands.size() > 2) fail(source, line_no, "at most two hands per record");
    for (const auto& jh : hands) rec.frame.hands.push_back(parse_hand(jh, source, line_no));
    return rec;
}

std::string format_replay_line(const ReplayRecord& record) {
    json j = json::object();
    j["sample_id"] = record.key.sample_id;
    j["db"] = record.key.delta_b;
    j["dr"] = record.key.delta_r;
    if (record.has_frame_id) j["frame_id"] = record.frame.frame_id;
    if (record.frame.timestamp) j["timestamp"] = *record.frame.timestamp;
    json hands = json::array();
    for (const auto& h : record.frame.hands) {
        json lms = json::array();
        for (const auto& lm : h.landmarks) lms.push_back({lm.x, lm.y, lm.z});
        hands.push_back({{"handedness", std::string(to_string(h.handedness))}, {"score", h.score}, {"landmarks", lms}});
    }
    j["hands"] = std::move(hands);
    return j.dump();
}

void load_replay_into(ReplayStore& store, std::istream& in, const std::string& source, LoadDiagnostics* diag) {
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) continue;
        ReplayRecord rec = parse_replay_line(text, source, line_no);
        ReplayKey key = rec.key;
        if (store.insert(std::move(rec.key), std::move(rec.frame)) && diag) {
            diag->warnings.push_back(source + ":" + std::to_string(line_no) + ": duplicate record for (" +
                                     key.sample_id + ", " + std::to_string(key.delta_b) + ", " +
                                     std::to_string(key.delta_r) + "); keeping the later one");
        }
    }
}

ReplayStore load_replay(const std::filesystem::path& path, LoadDiagnostics* diag) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open replay file " + path.string());
    ReplayStore store;
    load_replay_into(store, in, path.string(), diag);
    return store;
}

void save_replay(const ReplayStore& store, std::ostream& out) {
    for (const auto& [key, frame] : store.records()) out << format_replay_line({key, frame, false}) << '\n';
}

void save_replay(const ReplayStore& store, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write replay file " + path.string());
    save_replay(store, out);
}

SequenceReader::SequenceReader(std::istream& in, AugmentationSetting setting, std::string source)
    : in_(&in), setting_(std::move(setting)), source_(std::move(source)) {}

std::optional<ReplayRecord> SequenceReader::read_record() {
    std::string text;
    while (std::getline(*in_, text)) {
        ++line_no_;
        if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) continue;
        return parse_replay_line(text, source_, line_no_);
    }
    return std::nullopt;
}

namespace {

bool same_frame(const ReplayRecord& a, const ReplayRecord& b) {
    if (a.has_frame_id || b.has_frame_id)
        return a.has_frame_id && b.has_frame_id && a.frame.frame_id == b.frame.frame_id;
    return a.key.sample_id == b.key.sample_id;
}

}  // namespace

LandmarkFrame SequenceReader::resolve(std::vector<ReplayRecord>& group) {
    LandmarkFrame out;
    const ReplayRecord& head = group.front();
    out.frame_id = head.has_frame_id ? head.frame.frame_id : implicit_id_;
    ++implicit_id_;
    out.timestamp = head.frame.timestamp;

    for (const auto& stage : setting_.stages) {
        for (auto& rec : group) {
            if (rec.key.delta_b == stage.delta_b && rec.key.delta_r == stage.delta_r && !rec.frame.empty()) {
                out.hands = std::move(rec.frame.hands);
                if (rec.frame.timestamp) out.timestamp = rec.frame.timestamp;
                return out;
            }
        }
    }
    return out;
}

std::optional<LandmarkFrame> SequenceReader::next() {
    std::optional<ReplayRecord> first = lookahead_ ? std::move(lookahead_) : read_record();
    lookahead_.reset();
    if (!first) return std::nullopt;

    std::vector<ReplayRecord> group;
    group.push_back(std::move(*first));
    while (auto rec = read_record()) {
        if (!same_frame(group.front(), *rec)) {
            lookahead_ = std::move(rec);
            break;
        }
        group.push_back(std::move(*rec));
    }
    return resolve(group);
}

std::vector<LandmarkFrame> load_sequence(const std::filesystem::path& path, const AugmentationSetting& setting) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open sequence file " + path.string());
    SequenceReader reader(in, setting, path.string());
    std::vector<LandmarkFrame> frames;
    while (auto f = reader.next()) frames.push_back(std::move(*f));
    std::stable_sort(frames.begin(), frames.end(),
                     [](const LandmarkFrame& a, const LandmarkFrame& b) { return a.frame_id < b.frame_id; });
    return frames;
}

void write_sequence(const std::vector<LandmarkFrame>& frames, const std::string& sample_id, std::ostream& out) {
    for (const auto& f : frames) out << format_replay_line({ReplayKey(sample_id, 0, 0), f, true}) << '\n';
}

}  // namespace hgr
