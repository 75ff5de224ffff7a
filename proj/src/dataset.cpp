#include "bnsl/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "bnsl/rng.hpp"

namespace bnsl {

namespace {

constexpr std::size_t kMaxArity = 255;           // cells are stored as uint8_t
constexpr std::size_t kMaxStrata = std::size_t{1} << 28;

// Splits one CSV record. Handles double-quoted fields with "" escapes; does
// not support embedded newlines.
std::vector<std::string> split_record(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) throw ParseError("unterminated quoted field at line " + std::to_string(line_no), line_no);
    fields.push_back(std::move(field));
    return fields;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\n") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& s) {
    if (!needs_quoting(s)) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') out << "\"\"";
        else out << c;
    }
    out << '"';
}

}  // namespace

Dataset::Dataset(std::vector<Variable> variables, std::vector<std::vector<std::uint8_t>> columns,
                 std::size_t dropped_row_count)
    : variables_(std::move(variables)),
      columns_(std::move(columns)),
      dropped_row_count_(dropped_row_count) {
    if (variables_.size() != columns_.size())
        throw std::invalid_argument("Dataset: variable/column count mismatch");
    if (columns_.empty()) throw std::invalid_argument("Dataset: no variables");
    row_count_ = columns_.front().size();
    if (row_count_ == 0) throw std::invalid_argument("Dataset: no rows");

    std::set<std::string> names;
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        const Variable& v = variables_[i];
        if (!names.insert(v.name).second)
            throw std::invalid_argument("Dataset: duplicate variable name '" + v.name + "'");
        if (v.arity() < 2)
            throw std::invalid_argument("Dataset: variable '" + v.name + "' has arity < 2");
        if (v.arity() > kMaxArity)
            throw std::invalid_argument("Dataset: variable '" + v.name + "' has too many levels");
        std::set<std::string> labels(v.levels.begin(), v.levels.end());
        if (labels.size() != v.levels.size())
            throw std::invalid_argument("Dataset: duplicate level label in '" + v.name + "'");
        if (columns_[i].size() != row_count_)
            throw std::invalid_argument("Dataset: ragged columns");
        for (std::uint8_t cell : columns_[i]) {
            if (cell >= v.arity())
                throw std::invalid_argument("Dataset: cell value out of range in '" + v.name + "'");
        }
    }
}

std::size_t Dataset::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].name == name) return i;
    }
    throw std::out_of_range("Dataset: no variable named '" + name + "'");
}

bool Dataset::has_variable(const std::string& name) const {
    return std::any_of(variables_.begin(), variables_.end(),
                       [&](const Variable& v) { return v.name == name; });
}

Dataset Dataset::reordered(const std::vector<std::size_t>& permutation) const {
    if (permutation.size() != variables_.size())
        throw std::invalid_argument("reordered: permutation size mismatch");
    return projected(permutation);
}

Dataset Dataset::projected(const std::vector<std::size_t>& columns) const {
    std::vector<Variable> vars;
    std::vector<std::vector<std::uint8_t>> cols;
    vars.reserve(columns.size());
    cols.reserve(columns.size());
    for (std::size_t src : columns) {
        vars.push_back(variables_.at(src));
        cols.push_back(columns_.at(src));
    }
    return Dataset(std::move(vars), std::move(cols), dropped_row_count_);
}

void Dataset::write_csv(std::ostream& out) const {
    for (std::size_t c = 0; c < variables_.size(); ++c) {
        if (c > 0) out << ',';
        write_field(out, variables_[c].name);
    }
    out << '\n';
    for (std::size_t r = 0; r < row_count_; ++r) {
        for (std::size_t c = 0; c < variables_.size(); ++c) {
            if (c > 0) out << ',';
            write_field(out, variables_[c].levels[columns_[c][r]]);
        }
        out << '\n';
    }
}

Dataset load_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty input: missing header", 1);
    ++line_no;
    const std::vector<std::string> header = split_record(strip_cr(line), line_no);
    const std::size_t width = header.size();
    {
        std::set<std::string> seen;
        for (const std::string& name : header) {
            if (name.empty()) throw ParseError("empty column name in header", 1);
            if (!seen.insert(name).second)
                throw ParseError("duplicate column name '" + name + "' in header", 1);
        }
    }

    std::vector<std::vector<std::string>> kept_rows;
    std::size_t dropped = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string record = strip_cr(line);
        if (record.empty() && in.peek() == std::char_traits<char>::eof()) break;  // trailing newline
        std::vector<std::string> fields = split_record(record, line_no);
        if (fields.size() != width)
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(width) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        const bool missing = std::any_of(fields.begin(), fields.end(),
                                         [](const std::string& f) { return f.empty(); });
        if (missing) {
            ++dropped;
            continue;
        }
        kept_rows.push_back(std::move(fields));
    }
    if (kept_rows.empty()) throw ParseError("no complete rows after listwise deletion");

    // Infer level vocabularies in first-appearance order over retained rows.
    std::vector<Variable> variables(width);
    std::vector<std::map<std::string, std::uint8_t>> level_index(width);
    std::vector<std::vector<std::uint8_t>> columns(width);
    for (std::size_t c = 0; c < width; ++c) {
        variables[c].name = header[c];
        columns[c].reserve(kept_rows.size());
    }
    for (const auto& row : kept_rows) {
        for (std::size_t c = 0; c < width; ++c) {
            auto [it, inserted] = level_index[c].try_emplace(
                row[c], static_cast<std::uint8_t>(variables[c].levels.size()));
            if (inserted) {
                if (variables[c].levels.size() >= kMaxArity)
                    throw ParseError("column '" + header[c] + "' has more than " +
                                     std::to_string(kMaxArity) + " levels");
                variables[c].levels.push_back(row[c]);
            }
            columns[c].push_back(it->second);
        }
    }
    for (std::size_t c = 0; c < width; ++c) {
        if (variables[c].levels.size() < 2)
            throw ParseError("column '" + header[c] + "' is degenerate: only " +
                             std::to_string(variables[c].levels.size()) +
                             " observed level(s)");
    }
    return Dataset(std::move(variables), std::move(columns), dropped);
}

Dataset load_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return load_csv(in);
}

Dataset apply_recode(const Dataset& d, const RecodeSpec& spec) {
    for (const auto& [name, mapping] : spec.level_map) {
        if (!d.has_variable(name))
            throw RecodeError("recode references unknown variable '" + name + "'");
        const Variable& v = d.variable(d.index_of(name));
        for (const auto& [from, to] : mapping) {
            if (std::find(v.levels.begin(), v.levels.end(), from) == v.levels.end())
                throw RecodeError("recode for '" + name + "' references unknown level '" +
                                  from + "'");
            if (to.empty())
                throw RecodeError("recode for '" + name + "' maps '" + from +
                                  "' to an empty label");
        }
        for (const std::string& level : v.levels) {
            if (mapping.find(level) == mapping.end())
                throw RecodeError("recode for '" + name + "' leaves level '" + level +
                                  "' unmapped");
        }
    }
    std::set<std::string> drops;
    for (const std::string& name : spec.drop_variables) {
        if (!d.has_variable(name))
            throw RecodeError("drop list references unknown variable '" + name + "'");
        drops.insert(name);
    }

    std::vector<Variable> variables;
    std::vector<std::vector<std::uint8_t>> columns;
    for (std::size_t c = 0; c < d.variable_count(); ++c) {
        const Variable& v = d.variable(c);
        if (drops.count(v.name)) continue;
        auto it = spec.level_map.find(v.name);
        if (it == spec.level_map.end()) {
            variables.push_back(v);
            columns.push_back(d.column(c));
            continue;
        }
        // Grouped level order: first occurrence while walking the original levels.
        Variable grouped{v.name, {}};
        std::map<std::string, std::uint8_t> grouped_index;
        std::vector<std::uint8_t> old_to_new(v.arity());
        for (std::size_t l = 0; l < v.arity(); ++l) {
            const std::string& label = it->second.at(v.levels[l]);
            auto [gi, inserted] =
                grouped_index.try_emplace(label, static_cast<std::uint8_t>(grouped.levels.size()));
            if (inserted) grouped.levels.push_back(label);
            old_to_new[l] = gi->second;
        }
        if (grouped.levels.size() < 2)
            throw RecodeError("recode collapses variable '" + v.name + "' to a single level");
        std::vector<std::uint8_t> col;
        col.reserve(d.row_count());
        for (std::uint8_t cell : d.column(c)) col.push_back(old_to_new[cell]);
        variables.push_back(std::move(grouped));
        columns.push_back(std::move(col));
    }
    if (variables.empty()) throw RecodeError("recode drops every variable");
    return Dataset(std::move(variables), std::move(columns), d.dropped_row_count());
}

Dataset bootstrap_resample(const Dataset& d, std::uint64_t replicate_index,
                           std::uint64_t master_seed) {
    const std::size_t n = d.row_count();
    Rng rng(derive_seed(master_seed, replicate_index));
    std::vector<std::size_t> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = rng.next_below(n);

    std::vector<std::vector<std::uint8_t>> columns(d.variable_count());
    for (std::size_t c = 0; c < d.variable_count(); ++c) {
        const auto& src = d.column(c);
        auto& dst = columns[c];
        dst.reserve(n);
        for (std::size_t r : rows) dst.push_back(src[r]);
    }
    return Dataset(d.variables(), std::move(columns), 0);
}

ContingencyTable counts(const Dataset& d, std::size_t x, std::size_t y,
                        std::span<const std::size_t> z) {
    if (x == y) throw std::invalid_argument("counts: x and y must differ");
    for (std::size_t zi : z) {
        if (zi == x || zi == y) throw std::invalid_argument("counts: z overlaps x or y");
    }

    ContingencyTable t;
    t.x_arity = d.variable(x).arity();
    t.y_arity = d.variable(y).arity();
    t.stratum_count = 1;
    for (std::size_t zi : z) {
        const std::size_t a = d.variable(zi).arity();
        t.z_arities.push_back(a);
        if (t.stratum_count > kMaxStrata / a)
            throw std::length_error("counts: conditioning state space too large");
        t.stratum_count *= a;
    }
    t.cells.assign(t.stratum_count * t.x_arity * t.y_arity, 0);

    const auto& col_x = d.column(x);
    const auto& col_y = d.column(y);
    const std::size_t n = d.row_count();
    if (z.empty()) {
        for (std::size_t r = 0; r < n; ++r) ++t.cells[col_x[r] * t.y_arity + col_y[r]];
    } else {
        for (std::size_t r = 0; r < n; ++r) {
            std::size_t stratum = 0;
            for (std::size_t k = 0; k < z.size(); ++k)
                stratum = stratum * t.z_arities[k] + d.value(r, z[k]);
            ++t.cells[(stratum * t.x_arity + col_x[r]) * t.y_arity + col_y[r]];
        }
    }
    t.total = static_cast<std::int64_t>(n);
    return t;
}

ContingencyTable counts(const Dataset& d, const std::string& x, const std::string& y,
                        const std::vector<std::string>& z) {
    std::vector<std::size_t> zi;
    zi.reserve(z.size());
    for (const std::string& name : z) zi.push_back(d.index_of(name));
    return counts(d, d.index_of(x), d.index_of(y), zi);
}

}  // namespace bnsl
