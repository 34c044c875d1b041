#include "woce/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

namespace woce {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    s = s.substr(first, last - first + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string_view> split_row(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return cells;
}

std::optional<double> parse_number(std::string_view cell) {
    if (!cell.empty() && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty()) {
        return std::nullopt;
    }
    return value;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(fmt::format("cannot open {}", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError(fmt::format("cannot write {}", path.string()));
    }
    return out;
}

// Numbers labels by first appearance of their string form.
class LabelInterner {
public:
    int operator()(std::string_view s) {
        auto [it, inserted] = ids_.try_emplace(std::string(s), static_cast<int>(ids_.size()));
        return it->second;
    }

private:
    std::unordered_map<std::string, int> ids_;
};

std::vector<std::pair<std::size_t, std::string_view>> nonblank_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t start = 0;
    std::size_t number = 1;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        if (!trim(line).empty()) {
            lines.emplace_back(number, line);
        }
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
        ++number;
    }
    return lines;
}

}  // namespace

LabelColumn LabelColumn::parse(std::string_view text) {
    if (text == "none") {
        return {Kind::none, 0};
    }
    if (text == "last") {
        return {Kind::last, 0};
    }
    std::size_t idx = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), idx);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InvalidInput(fmt::format("label column must be none, last or a column index, got '{}'", text));
    }
    return {Kind::index, idx};
}

LabeledDataset parse_csv(std::string_view text, LabelColumn label_col, std::string name) {
    const auto lines = nonblank_lines(text);
    if (lines.empty()) {
        throw ParseError(fmt::format("{}: file is empty", name));
    }
    const std::size_t width = split_row(lines.front().second).size();
    std::optional<std::size_t> label_at;
    if (label_col.kind == LabelColumn::Kind::last) {
        label_at = width - 1;
    } else if (label_col.kind == LabelColumn::Kind::index) {
        if (label_col.index >= width) {
            throw ParseError(fmt::format("{}: label column {} out of range for {} columns", name, label_col.index, width));
        }
        label_at = label_col.index;
    }
    const std::size_t num_features = width - (label_at ? 1 : 0);
    if (num_features == 0) {
        throw ParseError(fmt::format("{}: no feature columns", name));
    }

    std::size_t first_data = 0;
    std::vector<std::string> feature_names;
    {
        const auto cells = split_row(lines.front().second);
        bool header = false;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c != label_at && !parse_number(cells[c])) {
                header = true;
            }
        }
        if (header) {
            first_data = 1;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c != label_at) {
                    feature_names.emplace_back(cells[c]);
                }
            }
        }
    }

    const std::size_t rows = lines.size() - first_data;
    Matrix values(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(num_features));
    std::vector<int> labels;
    LabelInterner intern;
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& [line_no, line] = lines[first_data + r];
        const auto cells = split_row(line);
        if (cells.size() != width) {
            throw ParseError(fmt::format("{}: line {} has {} fields, expected {}", name, line_no, cells.size(), width));
        }
        Eigen::Index f = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c == label_at) {
                labels.push_back(intern(cells[c]));
                continue;
            }
            const auto v = parse_number(cells[c]);
            if (!v || !std::isfinite(*v)) {
                throw ParseError(fmt::format("{}: line {} column {}: '{}' is not a finite number", name, line_no, c + 1,
                                             cells[c]));
            }
            values(static_cast<Eigen::Index>(r), f++) = *v;
        }
    }
    if (rows < 2) {
        throw ParseError(fmt::format("{}: need at least 2 data rows, found {}", name, rows));
    }

    LabeledDataset ds{DataMatrix(std::move(values), std::move(feature_names)), std::nullopt, std::move(name)};
    if (label_at) {
        ds.labels = std::move(labels);
    }
    return ds;
}

LabeledDataset load_csv(const std::filesystem::path& path, LabelColumn label_col) {
    return parse_csv(read_file(path), label_col, path.stem().string());
}

LabeledDataset zscore_normalize(const LabeledDataset& ds) {
    const Matrix& x = ds.data.values();
    const auto n = static_cast<double>(x.rows());
    Matrix out(x.rows(), x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double mean = x.col(j).mean();
        const Vector centered = x.col(j).array() - mean;
        const double sd = std::sqrt(centered.squaredNorm() / n);
        out.col(j) = sd > 0.0 ? Vector(centered / sd) : Vector::Zero(x.rows());
    }
    return {DataMatrix(std::move(out), ds.data.feature_names()), ds.labels, ds.name};
}

std::vector<int> read_labels(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    std::vector<int> labels;
    LabelInterner intern;
    for (const auto& [line_no, line] : nonblank_lines(text)) {
        const auto cells = split_row(line);
        if (cells.size() != 1) {
            throw ParseError(fmt::format("{}: line {} should hold a single label", path.string(), line_no));
        }
        labels.push_back(intern(cells.front()));
    }
    if (labels.empty()) {
        throw ParseError(fmt::format("{}: file is empty", path.string()));
    }
    return labels;
}

void write_labels(const std::filesystem::path& path, const std::vector<int>& labels) {
    auto out = open_output(path);
    for (int l : labels) {
        out << l << '\n';
    }
}

ConstraintSet read_constraints(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    ConstraintSet cs;
    for (const auto& [line_no, line] : nonblank_lines(text)) {
        const auto cells = split_row(line);
        std::size_t i = 0;
        std::size_t j = 0;
        const bool ok = cells.size() == 3 &&
                        std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), i).ec == std::errc{} &&
                        std::from_chars(cells[1].data(), cells[1].data() + cells[1].size(), j).ec == std::errc{};
        if (!ok || (cells[2] != "must" && cells[2] != "cannot")) {
            throw ParseError(fmt::format("{}: line {} is not of the form i,j,must|cannot", path.string(), line_no));
        }
        (cells[2] == "must" ? cs.must : cs.cannot).push_back({i, j});
    }
    return cs;
}

void write_constraints(const std::filesystem::path& path, const ConstraintSet& cs) {
    auto out = open_output(path);
    for (const auto& p : cs.must) {
        out << p.first << ',' << p.second << ",must\n";
    }
    for (const auto& p : cs.cannot) {
        out << p.first << ',' << p.second << ",cannot\n";
    }
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
    auto out = open_output(path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out << (j ? "," : "") << fmt::format("{:.17g}", m(i, j));
        }
        out << '\n';
    }
}

void write_dataset_csv(const std::filesystem::path& path, const LabeledDataset& ds) {
    auto out = open_output(path);
    const auto& names = ds.data.feature_names();
    for (std::size_t j = 0; j < ds.data.cols(); ++j) {
        out << (j ? "," : "") << (names.empty() ? fmt::format("x{}", j) : names[j]);
    }
    out << (ds.labels ? ",label\n" : "\n");
    const Matrix& v = ds.data.values();
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        for (Eigen::Index j = 0; j < v.cols(); ++j) {
            out << (j ? "," : "") << fmt::format("{:.17g}", v(i, j));
        }
        if (ds.labels) {
            out << ',' << (*ds.labels)[static_cast<std::size_t>(i)];
        }
        out << '\n';
    }
}

}  // namespace woce
