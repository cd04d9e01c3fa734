#include "hplus/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "hplus/errors.hpp"

namespace hplus {

using nlohmann::json;

namespace {

// Source line of each element of the array stored under `key`, found by a
// bracket-depth scan of the raw text. Empty when the key is not found.
std::vector<int> element_lines(const std::string& text, const std::string& key) {
    std::vector<int> lines;
    const auto at = text.find("\"" + key + "\"");
    if (at == std::string::npos) return lines;
    int line = 1;
    for (std::size_t i = 0; i < at; ++i) line += text[i] == '\n';
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = at + key.size() + 2; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') ++line;
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
            continue;
        }
        if (c == '"') in_string = true;
        if (c == '[') {
            ++depth;
            if (depth == 2) lines.push_back(line);
        } else if (c == ']') {
            if (--depth == 0) break;
        }
    }
    return lines;
}

std::string where(const std::vector<int>& lines, std::size_t i) {
    std::string s = "point " + std::to_string(i);
    if (i < lines.size()) s += " (line " + std::to_string(lines[i]) + ")";
    return s;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

std::pair<double, double> number_pair(const json& v, const std::string& what) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw InputError(what + " must be a pair of numbers");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

PointSequence parse_sequence_json(const std::string& text, const std::string& fallback_label) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw InputError("sequence file must hold a JSON object");
    std::string label = fallback_label;
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) throw InputError("label must be a string");
        label = doc["label"].get<std::string>();
    }
    std::string key;
    for (const char* k : {"points", "polar", "depth_polar"}) {
        if (doc.contains(k)) {
            if (!key.empty()) throw InputError("sequence file holds both \"" + key + "\" and \"" + k + "\"");
            key = k;
        }
    }
    if (key.empty()) throw InputError("sequence file needs \"points\", \"polar\" or \"depth_polar\"");
    const json& arr = doc[key];
    if (!arr.is_array()) throw InputError("\"" + key + "\" must be an array");
    const auto lines = element_lines(text, key);

    std::vector<DiscPoint> pts;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto [a, b] = number_pair(arr[i], where(lines, i));
        try {
            if (key == "points") {
                pts.push_back(DiscPoint::cartesian(a, b));
            } else if (key == "polar") {
                pts.push_back(DiscPoint::polar(a, b));
            } else {
                if (!(a > 0.0 && a <= 1.0)) throw std::domain_error("depth must lie in (0, 1]");
                pts.push_back(DiscPoint::from_depth(b, a));
            }
        } catch (const std::domain_error&) {
            throw InputError(where(lines, i) + " is not inside the unit disc");
        }
    }

    std::map<std::pair<double, double>, std::size_t> seen;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto [it, fresh] = seen.emplace(std::make_pair(pts[i].arg(), pts[i].depth()), i);
        if (!fresh) throw InputError(where(lines, i) + " repeats " + where(lines, it->second));
    }
    return {label, pts};
}

PointSequence read_sequence_file(const std::filesystem::path& path) {
    return parse_sequence_json(read_text_file(path), path.stem().string());
}

std::string sequence_to_json(const PointSequence& seq) {
    bool shallow = true;
    for (const auto& z : seq.points()) shallow = shallow && z.depth() >= 1e-6;
    json pts = json::array();
    for (const auto& z : seq.points()) {
        if (shallow) pts.push_back({z.modulus(), z.arg()});
        else pts.push_back({z.depth(), z.arg()});
    }
    json doc;
    doc["label"] = seq.label();
    doc[shallow ? "polar" : "depth_polar"] = pts;
    return doc.dump(1) + "\n";
}

BoundaryMeasure parse_measure_json(const std::string& text) {
    const json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("atoms") || !doc["atoms"].is_array()) {
        throw InputError("measure file needs an \"atoms\" array");
    }
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < doc["atoms"].size(); ++i) {
        const auto [angle, mass] = number_pair(doc["atoms"][i], "atom " + std::to_string(i));
        if (!(mass >= 0.0) || !std::isfinite(mass) || !std::isfinite(angle)) {
            throw InputError("atom " + std::to_string(i) + " needs a finite angle and a nonnegative mass");
        }
        atoms.push_back({angle, mass});
    }
    return BoundaryMeasure(std::move(atoms));
}

std::string measure_to_json(const BoundaryMeasure& mu) {
    json atoms = json::array();
    for (const auto& a : mu.atoms()) atoms.push_back({a.angle, a.mass});
    json doc;
    doc["atoms"] = atoms;
    return doc.dump(1) + "\n";
}

std::vector<double> parse_values_json(const std::string& text) {
    json doc = parse_json(text);
    if (doc.is_object() && doc.contains("values")) doc = doc["values"];
    if (!doc.is_array()) throw InputError("values file must hold an array or {\"values\": [...]}");
    std::vector<double> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        if (!doc[i].is_number()) throw InputError("value " + std::to_string(i) + " is not a number");
        out.push_back(doc[i].get<double>());
    }
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw InputError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw std::logic_error("CSV row width does not match the header");
    rows_.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
    std::string out;
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
            if (!quote) {
                out += cells[i];
                continue;
            }
            out += '"';
            for (char c : cells[i]) {
                if (c == '"') out += '"';
                out += c;
            }
            out += '"';
        }
        out += '\n';
    };
    emit(header_);
    for (const auto& r : rows_) emit(r);
    return out;
}

namespace {

constexpr double kCenter = 300.0;
constexpr double kRadius = 280.0;

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// Screen position of the point with modulus r and angle t; y points down.
std::pair<double, double> screen(double r, double t) {
    return {kCenter + kRadius * r * std::cos(t), kCenter - kRadius * r * std::sin(t)};
}

std::string arc_path(double r, double lo, double hi) {
    const auto [x0, y0] = screen(r, lo);
    const auto [x1, y1] = screen(r, hi);
    const int large = hi - lo > kPi ? 1 : 0;
    return "M " + px(x0) + " " + px(y0) + " A " + px(kRadius * r) + " " + px(kRadius * r) + " 0 " +
           std::to_string(large) + " 0 " + px(x1) + " " + px(y1);
}

}  // namespace

std::string disc_svg(const PointSequence& seq, const SvgLayers& layers) {
    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
    s += "<circle class=\"disc\" cx=\"300\" cy=\"300\" r=\"280\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    if (!layers.boxes.empty()) {
        s += "<g class=\"boxes\" fill=\"none\" stroke=\"#999999\" stroke-width=\"0.6\">\n";
        for (const auto& b : layers.boxes) {
            const double inner = 1.0 - b.side;
            const double half = std::min(kPi * b.side, kPi);
            const double lo = b.center_angle - half, hi = b.center_angle + half;
            if (half >= kPi) {
                s += "<circle class=\"box\" cx=\"300\" cy=\"300\" r=\"" + px(kRadius * inner) + "\"/>\n";
                continue;
            }
            const auto [ax, ay] = screen(inner, lo);
            const auto [bx, by] = screen(1.0, lo);
            const auto [cx, cy] = screen(inner, hi);
            s += "<path class=\"box\" d=\"" + arc_path(1.0, lo, hi) + " L " + px(cx) + " " + px(cy);
            const int large = hi - lo > kPi ? 1 : 0;
            s += " A " + px(kRadius * inner) + " " + px(kRadius * inner) + " 0 " + std::to_string(large) + " 1 " +
                 px(ax) + " " + px(ay) + " L " + px(bx) + " " + px(by) + "\"/>\n";
        }
        s += "</g>\n";
    }
    s += "<g class=\"bands\" fill=\"none\" stroke-width=\"6\">\n";
    for (std::size_t k = 0; k < layers.bands.size(); ++k) {
        const ArcSet& band = layers.bands[k];
        if (band.empty()) continue;
        std::string d;
        if (band.is_full()) {
            d = arc_path(1.03, 0.0, kPi) + " " + arc_path(1.03, kPi, kTwoPi);
        } else {
            for (const auto& a : band.arcs()) {
                if (!d.empty()) d += " ";
                d += arc_path(1.03, a.start, a.start + a.length);
            }
        }
        const double hue = std::fmod(137.508 * static_cast<double>(k), 360.0);
        s += "<path class=\"band\" data-node=\"" + std::to_string(k) + "\" stroke=\"hsl(" + px(hue) +
             ",70%,45%)\" d=\"" + d + "\"/>\n";
    }
    s += "</g>\n";
    if (layers.points) {
        s += "<g class=\"points\" fill=\"#c0392b\">\n";
        for (std::size_t n = 0; n < seq.size(); ++n) {
            const auto [x, y] = screen(seq[n].modulus(), seq[n].arg());
            s += "<circle cx=\"" + px(x) + "\" cy=\"" + px(y) + "\" r=\"2.5\"/>\n";
        }
        s += "</g>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace hplus
