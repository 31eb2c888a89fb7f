#include "apd/pattern_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace apd {

namespace {

std::string tuple_text(const Point& p, int dim, char sep) {
    std::string out = format_double(p[0]);
    if (dim == 2) out += sep + format_double(p[1]);
    return out;
}

Point parse_tuple(const std::string& s, int dim, char sep) {
    Point p{0.0, 0.0};
    std::size_t pos = 0;
    for (int d = 0; d < dim; ++d) {
        const std::size_t next = d + 1 < dim ? s.find(sep, pos) : s.size();
        if (next == std::string::npos) throw Error("malformed coordinate tuple '" + s + "'");
        p[d] = parse_double(std::string_view(s).substr(pos, next - pos));
        pos = next + 1;
    }
    return p;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '+')) s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw Error("cannot parse number '" + std::string(s) + "'");
    }
    return v;
}

nlohmann::json pattern_to_json(const PointPattern& p) {
    const int dim = p.dimension();
    auto tuple = [dim](const Point& x) {
        nlohmann::json a = nlohmann::json::array();
        for (int d = 0; d < dim; ++d) a.push_back(x[d]);
        return a;
    };
    nlohmann::json j;
    j["dimension"] = dim;
    j["label"] = p.label();
    j["window"] = {{"lo", tuple(p.window().lo)}, {"hi", tuple(p.window().hi)}};
    nlohmann::json pts = nlohmann::json::array();
    for (const Point& x : p.points()) pts.push_back(tuple(x));
    j["points"] = std::move(pts);
    return j;
}

PointPattern pattern_from_json(const nlohmann::json& doc) {
    // `apd generate` wraps the pattern in a report envelope.
    const nlohmann::json& j = doc.is_object() && doc.contains("result") && !doc.contains("dimension") ? doc["result"] : doc;
    try {
        const int dim = j.at("dimension").get<int>();
        if (dim != 1 && dim != 2) throw Error("dimension must be 1 or 2");
        auto tuple = [dim](const nlohmann::json& a) {
            if (!a.is_array() || static_cast<int>(a.size()) != dim) {
                throw Error("coordinate tuple must have " + std::to_string(dim) + " entries");
            }
            Point x{0.0, 0.0};
            for (int d = 0; d < dim; ++d) x[d] = a[d].get<double>();
            return x;
        };
        Box w{tuple(j.at("window").at("lo")), tuple(j.at("window").at("hi"))};
        std::vector<Point> pts;
        for (const auto& a : j.at("points")) pts.push_back(tuple(a));
        return PointPattern(dim, std::move(pts), w, j.value("label", std::string{}));
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid point-set JSON: ") + e.what());
    }
}

std::string pattern_to_text(const PointPattern& p) {
    const int dim = p.dimension();
    std::string out = "# dim=" + std::to_string(dim) + " window=" + tuple_text(p.window().lo, dim, ',') + ".." +
                      tuple_text(p.window().hi, dim, ',') + "\n";
    if (!p.label().empty()) out += "# label=" + p.label() + "\n";
    for (const Point& x : p.points()) out += tuple_text(x, dim, ' ') + "\n";
    return out;
}

PointPattern pattern_from_text(std::istream& in) {
    std::string line;
    int dim = 0;
    Box w;
    std::string label;
    std::vector<Point> pts;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (line[0] == '#') {
            const auto dpos = line.find("dim=");
            const auto wpos = line.find("window=");
            if (!have_header && dpos != std::string::npos && wpos != std::string::npos) {
                dim = std::stoi(line.substr(dpos + 4));
                if (dim != 1 && dim != 2) throw Error("dimension must be 1 or 2");
                std::string spec = line.substr(wpos + 7);
                spec = spec.substr(0, spec.find_first_of(" \t"));
                const auto dots = spec.find("..");
                if (dots == std::string::npos) throw Error("window header must read lo..hi");
                w.lo = parse_tuple(spec.substr(0, dots), dim, ',');
                w.hi = parse_tuple(spec.substr(dots + 2), dim, ',');
                have_header = true;
            } else if (line.rfind("# label=", 0) == 0) {
                label = line.substr(8);
            }
            continue;
        }
        if (!have_header) throw Error("point-set text is missing the '# dim=d window=lo..hi' header");
        std::istringstream fields(line);
        std::string tok;
        std::vector<std::string> toks;
        while (fields >> tok) toks.push_back(tok);
        if (static_cast<int>(toks.size()) != dim) throw Error("expected " + std::to_string(dim) + " coordinates per line");
        Point x{0.0, 0.0};
        for (int d = 0; d < dim; ++d) x[d] = parse_double(toks[d]);
        pts.push_back(x);
    }
    if (!have_header) throw Error("point-set text is missing the '# dim=d window=lo..hi' header");
    return PointPattern(dim, std::move(pts), w, label);
}

std::string write_pattern(const PointPattern& p, PatternFormat format) {
    return format == PatternFormat::json ? pattern_to_json(p).dump(1) + "\n" : pattern_to_text(p);
}

PointPattern read_pattern(std::istream& in) {
    in >> std::ws;
    if (in.peek() == '{') {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw Error(std::string("invalid point-set JSON: ") + e.what());
        }
        return pattern_from_json(j);
    }
    return pattern_from_text(in);
}

PointPattern load_pattern(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read point-set file " + path.string());
    return read_pattern(in);
}

void save_pattern(const PointPattern& p, const std::filesystem::path& path, PatternFormat format) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write point-set file " + path.string());
    out << write_pattern(p, format);
}

}  // namespace apd
