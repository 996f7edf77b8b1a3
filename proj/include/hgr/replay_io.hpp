#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hgr/augmentation.hpp"
#include "hgr/detection.hpp"

namespace hgr {

// Replay files are UTF-8 JSON Lines, one detector invocation per line:
//   {"sample_id": str, "db": int, "dr": int,
//    "hands": [{"handedness": "Left"|"Right", "score": float,
//               "landmarks": [[x, y, z] x 21]}]}
// Sequence files reuse the same record and may add "frame_id" (int) and
// "timestamp" (float).

struct ReplayRecord {
    ReplayKey key;
    LandmarkFrame frame;
    bool has_frame_id = false;
};

/// Parses one line. Throws FormatError naming `source` and `line_no`.
ReplayRecord parse_replay_line(const std::string& text, const std::string& source = "<input>",
                               std::size_t line_no = 0);

std::string format_replay_line(const ReplayRecord& record);

struct LoadDiagnostics {
    std::vector<std::string> warnings;
};

/// Loads a replay file; duplicate keys keep the last record and add a warning.
ReplayStore load_replay(const std::filesystem::path& path, LoadDiagnostics* diag = nullptr);
void load_replay_into(ReplayStore& store, std::istream& in, const std::string& source, LoadDiagnostics* diag = nullptr);

/// Writes records in key order.
void save_replay(const ReplayStore& store, const std::filesystem::path& path);
void save_replay(const ReplayStore& store, std::ostream& out);

/// Reads a recorded sequence. Consecutive lines sharing a frame key (the
/// "frame_id" field, else the sample id) form one frame; within a frame the
/// setting's first successful stage wins. Output is sorted by frame_id.
std::vector<LandmarkFrame> load_sequence(const std::filesystem::path& path, const AugmentationSetting& setting);

/// Incremental form of load_sequence for live streams. Frames without an
/// explicit frame_id are numbered in arrival order.
class SequenceReader {
public:
    SequenceReader(std::istream& in, AugmentationSetting setting, std::string source = "<stream>");

    /// Next complete frame, or nullopt at end of input.
    std::optional<LandmarkFrame> next();

private:
    std::optional<ReplayRecord> read_record();
    LandmarkFrame resolve(std::vector<ReplayRecord>& group);

    std::istream* in_;
    AugmentationSetting setting_;
    std::string source_;
    std::size_t line_no_ = 0;
    std::uint64_t implicit_id_ = 0;
    std::optional<ReplayRecord> lookahead_;
};

void write_sequence(const std::vector<LandmarkFrame>& frames, const std::string& sample_id, std::ostream& out);

}  // namespace hgr
