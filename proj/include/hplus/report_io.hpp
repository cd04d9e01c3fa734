#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hplus/arc_set.hpp"
#include "hplus/boundary_measure.hpp"
#include "hplus/density_classifier.hpp"

namespace hplus {

/**
 * Sequence files are JSON objects with a "label" and one of
 *   "points": [[x, y], ...]
 *   "polar": [[r, theta], ...]
 *   "depth_polar": [[1 - r, theta], ...]
 * The last form keeps points whose modulus rounds to 1 in double precision.
 * Errors are InputError; messages name the point index and its source line.
 */
PointSequence parse_sequence_json(const std::string& text, const std::string& fallback_label = "sequence");
PointSequence read_sequence_file(const std::filesystem::path& path);

/// "polar" when every point has 1 - |z| >= 1e-6, "depth_polar" otherwise.
std::string sequence_to_json(const PointSequence& seq);

/// {"atoms": [[angle, mass], ...]}
BoundaryMeasure parse_measure_json(const std::string& text);
std::string measure_to_json(const BoundaryMeasure& mu);

/// A bare array of numbers or {"values": [...]}.
std::vector<double> parse_values_json(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add_row(std::vector<std::string> row);
    std::string to_string() const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct SvgLayers {
    std::vector<ArcSet> bands;        // one boundary band per nonempty set
    std::vector<CarlesonBox> boxes;
    bool points = true;
};

/// Unit disc with the points of seq and the requested layers, 600 px square.
std::string disc_svg(const PointSequence& seq, const SvgLayers& layers);

}  // namespace hplus
