#ifndef BNSL_INFOTHEORY_HPP
#define BNSL_INFOTHEORY_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bnsl/dataset.hpp"

namespace bnsl {

/// Outcome of one conditional-independence test.
struct CiResult {
    double statistic = 0.0;  // G², always >= 0
    long df = 1;             // >= 1 after the empty-strata adjustment
    double p_value = 1.0;
    bool independent = true;  // p_value > alpha
};

/// Survival function (1 - CDF) of the chi-square distribution, computed via
/// the regularized incomplete gamma function: a series expansion below the
/// a+1 crossover and a continued fraction above it. Absolute error stays
/// below 1e-8 for df <= 100, statistic <= 200.
double chi_square_sf(double statistic, long df);

/// Plug-in entropy of the empirical distribution, natural log.
double entropy(const Dataset& d, std::size_t x);
double entropy(const Dataset& d, const std::string& x);

/// Plug-in mutual information of the empirical joint, nats, >= 0.
double mutual_information(const Dataset& d, std::size_t x, std::size_t y);
double mutual_information(const Dataset& d, const std::string& x, const std::string& y);

/// Sum over z-configurations of p(z) * MI(x; y | Z=z). Empty z reduces to
/// mutual_information.
double conditional_mi(const Dataset& d, std::size_t x, std::size_t y,
                      std::span<const std::size_t> z);
double conditional_mi(const Dataset& d, const std::string& x, const std::string& y,
                      const std::vector<std::string>& z);

/// G² likelihood-ratio test of x ⊥ y | z: statistic = 2·N·CMI in natural-log
/// units. Degrees of freedom are summed per stratum as (r_x'-1)(r_y'-1) where
/// r' counts levels with a nonzero marginal in that stratum; strata with no
/// observations contribute nothing; the total is floored at 1.
CiResult g2_test(const Dataset& d, std::size_t x, std::size_t y,
                 std::span<const std::size_t> z, double alpha);
CiResult g2_test(const Dataset& d, const std::string& x, const std::string& y,
                 const std::vector<std::string>& z, double alpha);

/// Seam between the structure learners and their independence decisions.
/// Learners address variables by index into this test's variable list; tests
/// must be safe for concurrent calls.
class CiTest {
public:
    virtual ~CiTest() = default;
    virtual std::size_t variable_count() const = 0;
    virtual const std::string& variable_name(std::size_t i) const = 0;
    virtual CiResult test(std::size_t x, std::size_t y,
                          std::span<const std::size_t> z) const = 0;
    /// Association magnitude used to rank candidates (larger = stronger).
    virtual double association(std::size_t x, std::size_t y,
                               std::span<const std::size_t> z) const {
        return test(x, y, z).statistic;
    }
};

/// The G² test over a dataset at a fixed significance level.
class GSquareTest final : public CiTest {
public:
    GSquareTest(const Dataset& d, double alpha);

    std::size_t variable_count() const override { return data_->variable_count(); }
    const std::string& variable_name(std::size_t i) const override {
        return data_->variable(i).name;
    }
    CiResult test(std::size_t x, std::size_t y,
                  std::span<const std::size_t> z) const override;
    double association(std::size_t x, std::size_t y,
                       std::span<const std::size_t> z) const override {
        return conditional_mi(*data_, x, y, z);
    }
    double alpha() const { return alpha_; }

private:
    const Dataset* data_;
    double alpha_;
};

}  // namespace bnsl

#endif
