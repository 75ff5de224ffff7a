#include "bnsl/infotheory.hpp"

#include <cmath>
#include <stdexcept>

namespace bnsl {

namespace {

constexpr int kMaxIterations = 1000;
constexpr double kEpsilon = 1e-15;
constexpr double kTiny = 1e-300;

// Regularized lower incomplete gamma P(a, x) by series expansion. Valid for
// x < a + 1 where the series converges quickly.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEpsilon) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by modified Lentz continued
// fraction. Valid for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEpsilon) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

struct G2Stats {
    double statistic = 0.0;  // 2 * sum of n_ij * ln(n_ij * n_s / (r_i * c_j))
    double cmi = 0.0;        // statistic / (2N)
    long df = 0;             // before the floor at 1
};

G2Stats g2_from_table(const ContingencyTable& t) {
    G2Stats out;
    double sum = 0.0;
    std::vector<std::int64_t> row(t.x_arity), col(t.y_arity);
    for (std::size_t s = 0; s < t.stratum_count; ++s) {
        std::fill(row.begin(), row.end(), 0);
        std::fill(col.begin(), col.end(), 0);
        std::int64_t n_s = 0;
        for (std::size_t i = 0; i < t.x_arity; ++i) {
            for (std::size_t j = 0; j < t.y_arity; ++j) {
                const std::int64_t n = t.at(s, i, j);
                row[i] += n;
                col[j] += n;
                n_s += n;
            }
        }
        if (n_s == 0) continue;  // empty stratum: no contribution, no df
        long nonzero_rows = 0, nonzero_cols = 0;
        for (std::int64_t r : row) nonzero_rows += (r > 0);
        for (std::int64_t c : col) nonzero_cols += (c > 0);
        out.df += (nonzero_rows - 1) * (nonzero_cols - 1);
        for (std::size_t i = 0; i < t.x_arity; ++i) {
            if (row[i] == 0) continue;
            for (std::size_t j = 0; j < t.y_arity; ++j) {
                const std::int64_t n = t.at(s, i, j);
                if (n == 0) continue;
                sum += static_cast<double>(n) *
                       std::log(static_cast<double>(n) * static_cast<double>(n_s) /
                                (static_cast<double>(row[i]) * static_cast<double>(col[j])));
            }
        }
    }
    if (sum < 0.0) sum = 0.0;  // guard against rounding at exact independence
    out.statistic = 2.0 * sum;
    out.cmi = t.total > 0 ? sum / static_cast<double>(t.total) : 0.0;
    return out;
}

}  // namespace

double chi_square_sf(double statistic, long df) {
    if (df < 1) throw std::invalid_argument("chi_square_sf: df must be >= 1");
    if (statistic < 0.0) throw std::invalid_argument("chi_square_sf: statistic must be >= 0");
    if (statistic == 0.0) return 1.0;
    const double a = 0.5 * static_cast<double>(df);
    const double x = 0.5 * statistic;
    double q = (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_continued_fraction(a, x);
    if (q < 0.0) q = 0.0;
    if (q > 1.0) q = 1.0;
    return q;
}

double entropy(const Dataset& d, std::size_t x) {
    const Variable& v = d.variable(x);
    std::vector<std::int64_t> count(v.arity(), 0);
    for (std::uint8_t cell : d.column(x)) ++count[cell];
    const double n = static_cast<double>(d.row_count());
    double h = 0.0;
    for (std::int64_t c : count) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log(p);
    }
    return h < 0.0 ? 0.0 : h;
}

double entropy(const Dataset& d, const std::string& x) { return entropy(d, d.index_of(x)); }

double mutual_information(const Dataset& d, std::size_t x, std::size_t y) {
    return conditional_mi(d, x, y, {});
}

double mutual_information(const Dataset& d, const std::string& x, const std::string& y) {
    return mutual_information(d, d.index_of(x), d.index_of(y));
}

double conditional_mi(const Dataset& d, std::size_t x, std::size_t y,
                      std::span<const std::size_t> z) {
    return g2_from_table(counts(d, x, y, z)).cmi;
}

double conditional_mi(const Dataset& d, const std::string& x, const std::string& y,
                      const std::vector<std::string>& z) {
    std::vector<std::size_t> zi;
    zi.reserve(z.size());
    for (const std::string& name : z) zi.push_back(d.index_of(name));
    return conditional_mi(d, d.index_of(x), d.index_of(y), zi);
}

CiResult g2_test(const Dataset& d, std::size_t x, std::size_t y,
                 std::span<const std::size_t> z, double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0)
        throw std::invalid_argument("g2_test: alpha must lie in (0, 1)");
    const G2Stats stats = g2_from_table(counts(d, x, y, z));
    CiResult r;
    r.statistic = stats.statistic;
    r.df = stats.df < 1 ? 1 : stats.df;
    r.p_value = chi_square_sf(r.statistic, r.df);
    r.independent = r.p_value > alpha;
    return r;
}

CiResult g2_test(const Dataset& d, const std::string& x, const std::string& y,
                 const std::vector<std::string>& z, double alpha) {
    std::vector<std::size_t> zi;
    zi.reserve(z.size());
    for (const std::string& name : z) zi.push_back(d.index_of(name));
    return g2_test(d, d.index_of(x), d.index_of(y), zi, alpha);
}

GSquareTest::GSquareTest(const Dataset& d, double alpha) : data_(&d), alpha_(alpha) {
    if (alpha <= 0.0 || alpha >= 1.0)
        throw std::invalid_argument("GSquareTest: alpha must lie in (0, 1)");
}

CiResult GSquareTest::test(std::size_t x, std::size_t y,
                           std::span<const std::size_t> z) const {
    return g2_test(*data_, x, y, z, alpha_);
}

}  // namespace bnsl
