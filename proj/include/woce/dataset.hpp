#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "woce/core.hpp"

namespace woce {

/// Feature matrix plus optional ground-truth classes.
struct LabeledDataset {
    DataMatrix data;
    std::optional<std::vector<int>> labels;
    std::string name;
};

/// Which CSV column, if any, holds class labels.
struct LabelColumn {
    enum class Kind { none, last, index };
    Kind kind = Kind::none;
    std::size_t index = 0;

    /// Accepts "none", "last" or a zero-based column number.
    static LabelColumn parse(std::string_view text);
};

/// Raised for malformed input files; the message names the offending line.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Read a comma-separated numeric table. The first row is treated as a header
 * when any of its feature cells is non-numeric. Labels may be arbitrary
 * strings and are numbered by first appearance.
 */
LabeledDataset load_csv(const std::filesystem::path& path, LabelColumn label_col = {});

/// Same as load_csv but from in-memory text; `name` is used in messages.
LabeledDataset parse_csv(std::string_view text, LabelColumn label_col = {}, std::string name = "<memory>");

/// Per-feature (x - mean) / sd with the population sd; constant features become 0.
LabeledDataset zscore_normalize(const LabeledDataset& ds);

/// One label per line (integers or strings, numbered by first appearance).
std::vector<int> read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const std::vector<int>& labels);

/// Header-less `i,j,must|cannot` rows with zero-based indices.
ConstraintSet read_constraints(const std::filesystem::path& path);
void write_constraints(const std::filesystem::path& path, const ConstraintSet& cs);

/// Dense row-major CSV with 17 significant digits.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);

/// Features (and the label as a last column, if present) with a header row.
void write_dataset_csv(const std::filesystem::path& path, const LabeledDataset& ds);

}  // namespace woce
