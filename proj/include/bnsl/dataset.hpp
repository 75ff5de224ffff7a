#ifndef BNSL_DATASET_HPP
#define BNSL_DATASET_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bnsl {

/// Error while reading a delimited input file. `line` is 1-based; 0 means the
/// location is not line-specific.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line = 0)
        : std::runtime_error(std::move(message)), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class RecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A categorical variable: a name plus its ordered level vocabulary.
struct Variable {
    std::string name;
    std::vector<std::string> levels;  // arity = levels.size(), always >= 2

    std::size_t arity() const { return levels.size(); }
};

/// Per-variable level grouping plus a list of variables to remove entirely.
/// Every original level of a recoded variable must appear as a key.
struct RecodeSpec {
    std::map<std::string, std::map<std::string, std::string>> level_map;
    std::vector<std::string> drop_variables;
};

/// Joint counts of (x, y) per configuration of a conditioning set z.
/// Strata with zero observations are materialized as all-zero blocks so the
/// degrees-of-freedom adjustment can see them.
struct ContingencyTable {
    std::size_t x_arity = 0;
    std::size_t y_arity = 0;
    std::vector<std::size_t> z_arities;
    std::size_t stratum_count = 1;
    std::vector<std::int64_t> cells;  // layout: (stratum * x_arity + x) * y_arity + y
    std::int64_t total = 0;

    std::int64_t at(std::size_t stratum, std::size_t x, std::size_t y) const {
        return cells[(stratum * x_arity + x) * y_arity + y];
    }
};

/// Immutable table of categorical observations stored as level indices,
/// column-major. Column order is part of the dataset's identity.
class Dataset {
public:
    Dataset() = default;

    /// Builds a dataset from parts, validating all invariants: at least one
    /// row, arity >= 2 per variable, unique names and level labels, and every
    /// cell index within its column's arity.
    Dataset(std::vector<Variable> variables, std::vector<std::vector<std::uint8_t>> columns,
            std::size_t dropped_row_count = 0);

    std::size_t row_count() const { return row_count_; }
    std::size_t variable_count() const { return variables_.size(); }
    std::size_t dropped_row_count() const { return dropped_row_count_; }

    const std::vector<Variable>& variables() const { return variables_; }
    const Variable& variable(std::size_t i) const { return variables_.at(i); }
    /// Index of a named variable; throws std::out_of_range if absent.
    std::size_t index_of(const std::string& name) const;
    bool has_variable(const std::string& name) const;

    std::uint8_t value(std::size_t row, std::size_t column) const {
        return columns_[column][row];
    }
    const std::vector<std::uint8_t>& column(std::size_t i) const { return columns_.at(i); }

    /// Same data with columns rearranged; `permutation` lists source indices.
    Dataset reordered(const std::vector<std::size_t>& permutation) const;

    /// Projection onto a subset of columns, listed by source index.
    Dataset projected(const std::vector<std::size_t>& columns) const;

    /// Writes the dataset as CSV (header + level labels), the inverse of load_csv.
    void write_csv(std::ostream& out) const;

private:
    std::vector<Variable> variables_;
    std::vector<std::vector<std::uint8_t>> columns_;
    std::size_t row_count_ = 0;
    std::size_t dropped_row_count_ = 0;
};

/// Reads comma-separated UTF-8 text: first record is the header, empty cells
/// mean missing. Rows with any missing cell are dropped (and counted). Level
/// vocabularies are inferred per column in first-appearance order over the
/// retained rows.
///
/// Throws ParseError for ragged records (with the offending line number) and
/// for columns with fewer than two observed levels.
Dataset load_csv(std::istream& in);
Dataset load_csv_file(const std::string& path);

/// Applies level grouping and variable drops, returning a new dataset.
/// Grouped level order follows the original level order (first occurrence of
/// each grouped label). Row count is preserved.
Dataset apply_recode(const Dataset& d, const RecodeSpec& spec);

/// N rows drawn with replacement. The drawn row-index sequence is a pure
/// function of (master_seed, replicate_index).
Dataset bootstrap_resample(const Dataset& d, std::uint64_t replicate_index,
                           std::uint64_t master_seed);

/// Exact joint counts of (x, y) within each configuration of z.
/// Requires x != y and x, y not in z.
ContingencyTable counts(const Dataset& d, std::size_t x, std::size_t y,
                        std::span<const std::size_t> z);
ContingencyTable counts(const Dataset& d, const std::string& x, const std::string& y,
                        const std::vector<std::string>& z);

}  // namespace bnsl

#endif
