#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "trs/ingest.hpp"
#include "trs/psr.hpp"
#include "trs/types.hpp"

namespace trs::io {

enum class RecordingFormat { NativeJson, AnnotatedCsv };

inline RecordingFormat format_from_name(const std::string& name) {
    if (name == "native-json") return RecordingFormat::NativeJson;
    if (name == "annotated-csv") return RecordingFormat::AnnotatedCsv;
    throw ConfigError("unknown recording format '" + name + "'");
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

// native-json: {sampling_rate_hz, lead_id, samples: [..], r_peaks: [..],
// t_peaks: [..]}; peak indices are 0-based sample offsets, beat-paired.
inline Recording read_native_json(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
    Recording rec;
    try {
        rec.sampling_rate_hz = j.at("sampling_rate_hz").get<double>();
        rec.lead_id = j.value("lead_id", std::string("lead"));
        rec.samples = j.at("samples").get<std::vector<double>>();
        rec.annotations.r_indices = j.value("r_peaks", std::vector<std::size_t>{});
        rec.annotations.t_indices = j.value("t_peaks", std::vector<std::size_t>{});
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
    if (rec.annotations.r_indices.size() != rec.annotations.t_indices.size())
        throw ValidationError("'" + path + "': r_peaks and t_peaks lengths differ");
    return rec;
}

inline void write_native_json(const std::string& path, const Recording& rec) {
    nlohmann::json j;
    j["sampling_rate_hz"] = rec.sampling_rate_hz;
    j["lead_id"] = rec.lead_id;
    j["samples"] = rec.samples;
    j["r_peaks"] = rec.annotations.r_indices;
    j["t_peaks"] = rec.annotations.t_indices;
    write_file(path, j.dump());
}

namespace csv_detail {

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline double parse_double(const std::string& s, const std::string& path, std::size_t line_no,
                           const std::string& field) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError("'" + path + "' line " + std::to_string(line_no) + ": bad " + field +
                         " value '" + s + "'");
    }
}

}  // namespace csv_detail

// annotated-csv: main file with columns sample_index,amplitude_mv and a
// sidecar <path>.ann with columns index,type (type in {R,T}). The sampling
// rate is not part of the format and must be supplied.
inline Recording read_annotated_csv(const std::string& path, double sampling_rate_hz,
                                    const std::string& lead_id = "") {
    if (sampling_rate_hz <= 0)
        throw ConfigError("annotated-csv requires a positive sampling rate");
    Recording rec;
    rec.sampling_rate_hz = sampling_rate_hz;
    rec.lead_id = lead_id.empty() ? std::filesystem::path(path).stem().string() : lead_id;

    std::istringstream main_in(read_file(path));
    std::string line;
    std::size_t line_no = 0;
    std::size_t expected_index = 0;
    while (std::getline(main_in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = csv_detail::split_line(line);
        if (line_no == 1 && fields.size() >= 2 && fields[0] == "sample_index") continue;
        if (fields.size() != 2)
            throw ParseError("'" + path + "' line " + std::to_string(line_no) +
                             ": expected 2 fields, got " + std::to_string(fields.size()));
        const double idx = csv_detail::parse_double(fields[0], path, line_no, "sample_index");
        if (static_cast<std::size_t>(idx) != expected_index)
            throw ParseError("'" + path + "' line " + std::to_string(line_no) +
                             ": sample_index not contiguous");
        ++expected_index;
        rec.samples.push_back(csv_detail::parse_double(fields[1], path, line_no, "amplitude_mv"));
    }

    const std::string ann_path = path + ".ann";
    std::istringstream ann_in(read_file(ann_path));
    std::vector<std::pair<std::size_t, char>> marks;
    line_no = 0;
    while (std::getline(ann_in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = csv_detail::split_line(line);
        if (line_no == 1 && fields.size() >= 2 && fields[0] == "index") continue;
        if (fields.size() != 2)
            throw ParseError("'" + ann_path + "' line " + std::to_string(line_no) +
                             ": expected 2 fields");
        const double idx = csv_detail::parse_double(fields[0], ann_path, line_no, "index");
        if (fields[1] != "R" && fields[1] != "T")
            throw ParseError("'" + ann_path + "' line " + std::to_string(line_no) +
                             ": type must be R or T, got '" + fields[1] + "'");
        marks.emplace_back(static_cast<std::size_t>(idx), fields[1][0]);
    }
    std::sort(marks.begin(), marks.end());
    // pair each R with the next T before the following R
    for (std::size_t i = 0; i < marks.size(); ++i) {
        if (marks[i].second != 'R') continue;
        for (std::size_t j = i + 1; j < marks.size() && marks[j].second != 'R'; ++j) {
            if (marks[j].second == 'T') {
                rec.annotations.r_indices.push_back(marks[i].first);
                rec.annotations.t_indices.push_back(marks[j].first);
                break;
            }
        }
    }
    return rec;
}

// Load a recording and cut it into annotated 10-second segments.
inline std::vector<std::pair<EcgSegment, PeakAnnotations>> load_recording(
    const std::string& path, RecordingFormat format, double csv_sampling_rate_hz = 500.0) {
    Recording rec = format == RecordingFormat::NativeJson
                        ? read_native_json(path)
                        : read_annotated_csv(path, csv_sampling_rate_hz);
    return window_recording(rec);
}

// PsrImage files: <base>.json header {grid_n, tau, q, M} plus <base>.csv
// with the probability matrix, one row per line.
inline void write_psr_image(const std::string& base_path, const PsrImage& img, int tau,
                            double q, const std::string& meta = "") {
    nlohmann::json header;
    header["grid_n"] = img.grid_n;
    header["tau"] = tau;
    header["q"] = q;
    header["M"] = img.total;
    if (!meta.empty()) header["meta"] = meta;
    write_file(base_path + ".json", header.dump(2));

    std::ostringstream csv;
    csv.precision(17);
    for (int i = 0; i < img.grid_n; ++i) {
        for (int j = 0; j < img.grid_n; ++j) {
            if (j) csv << ',';
            csv << img.prob_at(i, j);
        }
        csv << '\n';
    }
    write_file(base_path + ".csv", csv.str());
}

}  // namespace trs::io
